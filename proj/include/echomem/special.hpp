#ifndef ECHOMEM_SPECIAL_HPP
#define ECHOMEM_SPECIAL_HPP

namespace echomem::num {

// Dawson integral F(x) = exp(-x^2) * int_0^x exp(t^2) dt.
// Maclaurin series for small |x|, Rybicki's sampling expansion elsewhere;
// relative error below 1e-13 on the real line.
double dawson(double x);

// scaled_erfi(x) = exp(-x^2) * erfi(x) = (2/sqrt(pi)) * dawson(x).
// Odd, bounded (max ~0.6105 near x~0.924), stable for all x.
double scaled_erfi(double x);

// Imaginary error function erfi(x) = (2/sqrt(pi)) int_0^x exp(t^2) dt.
// Requires |x| <= 30; throws std::domain_error beyond and
// std::range_error where exp(x^2) overflows (use scaled_erfi there).
double erfi(double x);

} // namespace echomem::num

#endif
