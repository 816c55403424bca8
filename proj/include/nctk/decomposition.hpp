// Primitive parts, graded decomposition checks, intersection image and weight bounds.
#pragma once

#include "nctk/intersection.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nctk {

/// Joint kernel of the graded identity maps inside Gr^{W^J}_k.
struct PrimitivePart {
    std::vector<int> j;                 // 0-based branch set
    int k = 0;
    Subquotient<Q> space;               // sub / W^J_{k-1}, inside the ambient of the model
    std::map<int, Matrix<Q>> residual;  // branch outside J -> induced action in coordinates of `space`
    bool pure = true;                   // lies in Gr_k of M(sum of N_j over J, W)
    std::string purity_detail;
};

/// Primitive part computed inside the N-stable subspace `inside` (whole space when absent).
PrimitivePart primitive_part(const NCModel& model, const std::vector<int>& j, int k,
                             const std::optional<Subspace<Q>>& inside = std::nullopt);

enum class ComplexKind { Omega, Ic, IcLog };

struct DecompositionReport {
    int k = 0;
    CheckReport checks;
    /// degree -> dim H of Gr^W_k(complex), and the summed dims of the pieces.
    std::map<int, size_t> complex_dims, piece_dims;
};

/// z is used only for IcLog.
DecompositionReport check_graded_decomposition(const NCModel& model, int k, ComplexKind which,
                                               const std::vector<int>& z = {});

/// Filtration indices k with a nonzero graded piece of the chosen complex.
std::vector<int> decomposition_weights(const NCModel& model, ComplexKind which, const std::vector<int>& z = {});

struct IntersectionImage {
    int degree = 0;
    std::vector<Vec<Q>> representatives;  // cycles of i_star spanning the image modulo boundaries
    size_t dim = 0;
    std::map<int, size_t> weights;        // report weight -> graded dim
    int target_weight = 0;
    bool pure = true;
};

IntersectionImage intersection_image(const NCModel& model, const std::vector<int>& z, int degree);
IntersectionImage intersection_image(const IntersectionMorphism& im, const NCModel& model, int degree);

enum class PurityMode { Open, Support, Closed, Compact, Link };

struct PurityRow {
    int degree = 0;           // unshifted
    int perverse_degree = 0;  // degree - shift
    int weight = 0;
    size_t dim = 0;
    int bound = 0;
    bool pass = true;
};

struct PurityVerdict {
    std::vector<PurityRow> rows;
    bool pass = true;
    int shift = 0;
    int center = 0;  // the base weight a
    PurityMode mode = PurityMode::Open;
};

PurityVerdict purity_check(const CohomologyReport& report, int a, int shift, PurityMode mode);

std::string mode_name(PurityMode mode);
std::optional<PurityMode> parse_mode(const std::string& s);

}  // namespace nctk
