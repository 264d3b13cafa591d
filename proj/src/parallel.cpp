#include "tenkit/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tenkit {

void set_threads(int n) {
  if (n < 1) n = 1;
#ifdef _OPENMP
  omp_set_dynamic(0);
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace tenkit
