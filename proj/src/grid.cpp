#include "oldroyd/grid.hpp"

#include <stdexcept>

namespace oldroyd {

Grid make_grid(int n, double l) {
  if (n < 4) throw std::invalid_argument("make_grid: N must be >= 4");
  if (n % 2 != 0) throw std::invalid_argument("make_grid: N must be even");
  if (!(l > 0.0)) throw std::invalid_argument("make_grid: L must be positive");
  return Grid{n, l};
}

}  // namespace oldroyd
