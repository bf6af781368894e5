#pragma once

#include "magsense/magnet.hpp"

namespace magsense::magnetics {

/// Validation oracle: flux density by adaptive numerical quadrature over the
/// magnet's equivalent surface charges. Independent of the closed forms in
/// field(); intended for tests only.
///
/// Throws OracleError when the refinement ladder fails to converge.
struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

FieldVector field_oracle(const MagnetSpec& magnet, const Vec3& local_point,
                         double rel_tol = 1e-9, int max_order = 512);

}  // namespace magsense::magnetics
