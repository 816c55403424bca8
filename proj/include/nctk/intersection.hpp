// Intersection morphism i^! -> IC -> i^* and the link complex built on it.
#pragma once

#include "nctk/complex.hpp"

namespace nctk {

struct IntersectionMorphism {
    FilteredComplex shriek;     // i_shriek of the unipotent part
    FilteredComplex star;       // i_star of the unipotent part
    ComplexMap raw;             // chain-level composite of the projection and the pairing map
    ComplexMap filtered;        // filtered chain map inducing the same map on cohomology
    bool pairing_defined = false;  // false when the degree center does not match the fiber pairing
};

/// Built on unipotent_part(model); needs a nondegenerate pairing.
IntersectionMorphism intersection_morphism(const NCModel& model, const std::vector<int>& z);

/// Mixed cone over the filtered intersection morphism.
FilteredComplex link_complex(const NCModel& model, const std::vector<int>& z);

}  // namespace nctk
