#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qss/representation.hpp"
#include "qss/subrep.hpp"

namespace qss {

// Exact factorization V(a) = v_a f_a with both factors nonzero.
struct RankOneArc {
    int arc = -1;
    ExactMatrix v;  // alpha(ha) x 1
    ExactMatrix f;  // 1 x alpha(ta)
};

struct RankOneRep {
    const Representation* rep = nullptr;
    std::vector<RankOneArc> arcs;  // parallel to rep->quiver.arcs()
};

bool is_rank_one(const Representation& rep);

// Throws std::domain_error naming the offending arc when some V(a) does not
// have rank exactly one.
RankOneRep factorize_rank_one(const Representation& rep);

// The auxiliary digraph on S = {f_a} u {v_a}: f_a -> v_a for every arc, and
// v_a -> f_b whenever head(a) = tail(b) and f_b . v_a != 0 (exact test).
// Node 2k is the f-node of arc k, node 2k+1 its v-node.
struct DVGraph {
    int num_nodes = 0;
    std::vector<std::vector<int>> succ;
    std::vector<int> node_arc;
    std::vector<int> node_vertex;  // quiver vertex the node's vector lives at
    std::vector<char> node_is_f;
};

DVGraph build_dv_graph(const RankOneRep& r1);

// All successor-closed subsets of a digraph, as indicator vectors. Throws for
// ground sets above `limit` nodes (there can be 2^n lower sets).
void enumerate_lower_sets(const std::vector<std::vector<int>>& succ, int limit,
                          const std::function<void(const std::vector<char>&)>& visit);

// Linear matroid of exact column vectors; rank of a subset is the dimension
// of its span, memoized by subset mask for small ground sets.
class LinearMatroid {
  public:
    LinearMatroid() = default;
    LinearMatroid(int ambient, std::vector<ExactMatrix> ground);

    int size() const { return static_cast<int>(ground_.size()); }
    int ambient_dim() const { return ambient_; }
    int rank(const std::vector<int>& subset) const;

  private:
    int ambient_ = 0;
    std::vector<ExactMatrix> ground_;
    mutable std::unordered_map<std::uint64_t, int> cache_;
};

// Range-checked free-function form.
int matroid_rank(const LinearMatroid& m, const std::vector<int>& subset);

// Per-vertex ground sets of the two matroid families: S_i^+ holds the f_a of
// arcs leaving i (as column vectors), S_i^- the v_a of arcs entering i.
struct VertexMatroids {
    std::vector<LinearMatroid> out_functionals;  // indexed by vertex
    std::vector<LinearMatroid> in_vectors;
    std::vector<std::vector<int>> out_nodes;  // D[V] node ids feeding each ground set
    std::vector<std::vector<int>> in_nodes;
};

VertexMatroids build_vertex_matroids(const RankOneRep& r1);

struct K1FResult {
    bool k1 = false;
    bool full_rank = false;
    long sigma_total = 0;  // Sigma = sum of sigma^+(i) dim V(i)
};

K1FResult check_k1_f(const RankOneRep& r1, const Weight& sigma);

// sum_i sigma^+(i) r_i^+(S_i^+ \ X) + sigma^-(i) r_i^-(S_i^- n X) over a
// lower-set indicator X of D[V].
long k2_lhs(const RankOneRep& r1, const Weight& sigma, const VertexMatroids& vm,
            const std::vector<char>& in_x);

struct K2Result {
    bool holds = false;
    std::optional<std::vector<char>> witness;  // violating lower set if any
};

K2Result check_k2(const RankOneRep& r1, const Weight& sigma, int lowerset_limit = 24);

bool decide_rank_one_ss(const RankOneRep& r1, const Weight& sigma, int lowerset_limit = 24);

// Frank-style feasibility instance (upper capacities +inf, lower 0): only the
// crossing constraints with empty out-set survive, so feasibility reduces to
// f_V(S \ X) >= 0 over lower sets X.
struct SubflowInstance {
    DVGraph graph;
    std::function<long(const std::vector<char>&)> f;  // f_V over node subsets
    long sigma_total = 0;
};

SubflowInstance make_subflow_instance(const RankOneRep& r1, const Weight& sigma);

struct SubflowResult {
    bool feasible = false;
    std::optional<std::vector<char>> violating;  // lower set X with f_V(S\X) < 0
};

SubflowResult submodular_flow_feasible(const SubflowInstance& inst, int lowerset_limit = 24);

// Gale-type condition on a dimension-one support quiver: sigma(Q0) = 0 and
// sigma(X) <= 0 for every successor-closed vertex set X.
struct GaleResult {
    bool feasible = false;
    std::optional<std::vector<int>> witness;  // violating vertex set if any
};

GaleResult gale_feasible(const Quiver& support, const Weight& sigma, int lowerset_limit = 24);

}  // namespace qss
