#pragma once

#include <string>
#include <vector>

#include "qss/exact_matrix.hpp"
#include "qss/float_matrix.hpp"
#include "qss/quiver.hpp"

namespace qss {

// A representation assigns to each arc a an alpha(head) x alpha(tail) matrix
// over Q(i). All persistent data is exact; floats are derived on demand.
struct Representation {
    Quiver quiver;
    DimVector alpha;
    std::vector<ExactMatrix> mats;  // indexed like quiver.arcs()

    const ExactMatrix& mat(int a) const { return mats[a]; }
    int dim(int v) const { return alpha[v]; }
    long total_dim() const;
};

struct ValidationReport {
    bool ok = true;
    bool acyclic = false;
    std::vector<std::string> errors;
};

ValidationReport validate(const Representation& rep);
void require_valid(const Representation& rep, const char* where);

// Per-arc float mirror of the exact matrices (converted once, reused in sweeps).
struct FloatRep {
    std::vector<FloatMatrix> mats;
};
FloatRep to_float(const Representation& rep);

}  // namespace qss
