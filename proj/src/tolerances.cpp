#include "ucov/tolerances.hpp"

namespace ucov {

const Tolerances& Tolerances::defaults() {
  static const Tolerances instance{};
  return instance;
}

}  // namespace ucov
