#pragma once

#include <utility>
#include <vector>

#include "qss/representation.hpp"

namespace qss {

// Noncommutative linear form sum_j c_j x_{sym_j}. Symbol 0 is the constant
// placeholder x_0 (label-1 arcs are recorded as 1*x_0); arc symbols are
// numbered from 1. A symbol may appear in several terms; they add up.
struct LinearForm {
    std::vector<std::pair<int, GaussianRational>> terms;

    bool empty() const { return terms.empty(); }
    void add(int symbol, const GaussianRational& c);
};

struct ABPArc {
    int from = -1;
    int to = -1;
    LinearForm label;
};

// Layered branching program: arcs run between consecutive layers only, the
// first and last layers are singletons (source/sink). The polynomial at a
// vertex is the sum over source paths of the ordered product of labels.
struct ABP {
    std::vector<std::vector<int>> layers;
    std::vector<ABPArc> arcs;
    int num_vertices = 0;
    int num_symbols = 1;

    int source() const { return layers.front().front(); }
    int sink() const { return layers.back().front(); }
};

// Keep, per ordered vertex pair, a subset of the parallel arcs whose matrices
// span the same space (zero arcs dropped). GL-semistability is unchanged.
Representation reduce_arcs(const Representation& rep);

// Entries of the alpha(Q0) x alpha(Q0) symbolic adjacency matrix whose (i,j)
// vertex block is sum_{a: ta=j, ha=i} x_a V(a); rows/columns indexed by the
// global coordinate order (vertices in index order, coordinates within).
std::vector<std::vector<LinearForm>> symbolic_adjacency(const Representation& rep);

// Homogeneous ABP computing tr A^k; k layers of labels, no constant arcs.
ABP build_abp_for_trace_power(const Representation& rep, long k);

// One program computing sum_{k=1..alpha(Q0)^2} tr A^k, with label-1 arcs
// carried by x_0. Every source-sink path of a fixed x-degree picks up the
// same x_0 padding, so the aggregate is zero iff every tr A^k is.
ABP build_aggregate_abp(const Representation& rep);

// Raz-Shpilka layer sweep over Q(i): per layer, maintain a spanning set of
// the monomial coefficient vectors. Exact; throws on malformed programs.
bool abp_is_zero(const ABP& abp);

// True iff some tr A^k, k in [alpha(Q0)^2], is a nonzero noncommutative
// polynomial after arc reduction.
bool decide_gl_semistable(const Representation& rep);

}  // namespace qss
