#pragma once

#include <cstddef>
#include <functional>

namespace bose {

using ApplyFn = std::function<void(const double* in, double* out)>;

struct EigenResult {
  double eigenvalue = 0.0;
  double residual = 0.0;  // Krylov residual bound beta_m |s_m| at exit
  int iterations = 0;
  bool converged = false;
};

// Smallest eigenvalue of a real symmetric operator given through its
// matrix-vector action. Lanczos with full reorthogonalization and a
// deterministic seeded start vector. Converges on the Ritz residual
// beta_m |s_m|, with a stagnation fallback for clustered lowest eigenvalues
// (the value settles long before the vector can resolve the cluster).
EigenResult lanczos_smallest(const ApplyFn& apply, std::size_t n,
                             int max_iter = 450, double tol = 1e-9);

// Dense cross-check: materializes the operator column by column. Intended
// for small lattices only.
EigenResult dense_smallest(const ApplyFn& apply, std::size_t n);

}  // namespace bose
