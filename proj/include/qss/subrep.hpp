#pragma once

#include <optional>
#include <vector>

#include "qss/representation.hpp"

namespace qss {

// A candidate subrepresentation: per-vertex subspaces as canonical column
// bases (alpha(v) x dim W(v), reduced column echelon form).
struct Subrep {
    std::vector<ExactMatrix> basis;

    int dim(int v) const { return basis[v].cols(); }
    long total_dim() const;
};

Subrep zero_subrep(const Representation& rep);
Subrep full_subrep(const Representation& rep);

DimVector subrep_dims(const Subrep& w);

// Canonicalize every block (idempotent); all constructors below already return
// canonical bases.
Subrep canonicalize(const Representation& rep, const Subrep& w);

bool subrep_equal(const Subrep& a, const Subrep& b);
bool subrep_contains(const Subrep& outer, const Subrep& inner);  // pointwise span containment

// Does W satisfy V(a) W(ta) <= W(ha) for every arc?
bool is_subrepresentation(const Representation& rep, const Subrep& w);

// Smallest subrepresentation containing the given per-vertex seed subspaces
// (seeds may sit at any vertex; empty blocks are 0-column matrices).
// Requires an acyclic quiver: a single sweep in topological order suffices.
Subrep closure_subrepresentation(const Representation& rep, const Subrep& seeds);

// Largest subrepresentation with W(v) <= bound(v) for every bounded vertex
// (unbounded vertices pass std::nullopt). Reverse sweep dual to closure.
Subrep co_closure_subrepresentation(const Representation& rep,
                                    const std::vector<std::optional<ExactMatrix>>& bounds);

// sigma(dimv W) = sum_i sigma(i) dim W(i) -- King's functional.
long king_value(const Weight& sigma, const Subrep& w);

Subrep subrep_sum(const Representation& rep, const Subrep& a, const Subrep& b);
Subrep subrep_intersection(const Representation& rep, const Subrep& a, const Subrep& b);

}  // namespace qss
