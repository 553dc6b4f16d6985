#include "cayleyfp/reference.hpp"

#include <stdexcept>

namespace cayleyfp::reference {

ZnSet sumset(const ZnSet& A, const ZnSet& B) {
  if (A.modulus() != B.modulus())
    throw std::invalid_argument("sumset: modulus mismatch");
  const int n = A.modulus();
  ZnSet out(n);
  for (int a : A.elements())
    for (int b : B.elements()) out.add((a + b) % n);
  return out;
}

ZnSet restricted_sumset(const ZnSet& A) {
  const int n = A.modulus();
  ZnSet out(n);
  auto as = A.elements();
  for (size_t i = 0; i < as.size(); ++i)
    for (size_t j = 0; j < as.size(); ++j)
      if (i != j) out.add((as[i] + as[j]) % n);
  return out;
}

}  // namespace cayleyfp::reference
