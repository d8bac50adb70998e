#include "forge/scalar.hpp"

namespace forge {

namespace {
std::string rational_str(const Rational& r) { return r.get_str(); }
}  // namespace

std::string Scalar::str() const {
  if (is_zero()) return "0";
  if (sgn(im_) == 0) return rational_str(re_);
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = rational_str(im_) + "i";
  }
  if (sgn(re_) == 0) return imag;
  std::string out = "(" + rational_str(re_);
  if (sgn(im_) > 0) out += "+";
  return out + imag + ")";
}

}  // namespace forge
