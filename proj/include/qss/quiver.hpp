#pragma once

#include <string>
#include <vector>

namespace qss {

struct Arc {
    std::string id;
    int tail = -1;
    int head = -1;
};

// Finite directed multigraph with loops and parallel arcs allowed. Vertices
// and arcs are referenced by dense indices internally; string ids are kept
// for the file format and error messages.
class Quiver {
  public:
    int add_vertex(const std::string& id);
    int add_arc(const std::string& id, int tail, int head);

    int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
    int num_arcs() const { return static_cast<int>(arcs_.size()); }

    const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
    const std::string& vertex_id(int v) const { return vertex_ids_[v]; }
    int vertex_index(const std::string& id) const;

    const std::vector<Arc>& arcs() const { return arcs_; }
    const Arc& arc(int a) const { return arcs_[a]; }
    const std::vector<int>& in_arcs(int v) const { return in_arcs_[v]; }
    const std::vector<int>& out_arcs(int v) const { return out_arcs_[v]; }

  private:
    std::vector<std::string> vertex_ids_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> in_arcs_, out_arcs_;
};

using DimVector = std::vector<int>;
using Weight = std::vector<long>;

inline long positive_part(long x) { return x > 0 ? x : 0; }
inline long negative_part(long x) { return x < 0 ? -x : 0; }

// sigma(alpha) = sum_i sigma(i) alpha(i), and the split into sigma^+/sigma^- totals.
long weight_total(const Weight& w, const DimVector& alpha);
long weight_plus_total(const Weight& w, const DimVector& alpha);
long weight_minus_total(const Weight& w, const DimVector& alpha);

std::vector<int> positive_vertices(const Weight& w);
std::vector<int> negative_vertices(const Weight& w);

struct TopoOrder {
    bool acyclic = false;
    std::vector<int> vertex_order;  // sources first
    std::vector<int> arc_order;     // arcs sorted by tail position
    std::vector<std::string> cycle;  // witness vertex ids when not acyclic
};

TopoOrder topological_order(const Quiver& q);

// Throwing variant for algorithms whose contracts require acyclicity.
TopoOrder require_acyclic(const Quiver& q, const char* where);

}  // namespace qss
