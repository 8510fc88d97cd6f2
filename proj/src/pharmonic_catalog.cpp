#include "gradwalk/pharmonic_catalog.hpp"

#include <charconv>
#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>

namespace gradwalk {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_dim(std::size_t n) {
    if (n < 2 || n > kMaxDim)
        throw ParameterError("dimension must lie in [2, " + std::to_string(kMaxDim) +
                             "], got " + std::to_string(n));
}

std::complex<double> ipow(std::complex<double> z, int k) {
    std::complex<double> r(1.0, 0.0);
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

}  // namespace

TestFunction TestFunction::linear(Point coeffs, double offset) {
    require_dim(coeffs.dim());
    std::size_t const n = coeffs.dim();
    return TestFunction(n, Linear{coeffs, offset}, {});
}

TestFunction TestFunction::linear_x1(std::size_t n) {
    require_dim(n);
    return linear(Point::unit(n, 0), 0.0);
}

TestFunction TestFunction::shifted_radial(std::size_t n, double p, Point center) {
    require_dim(n);
    if (center.dim() != n) throw ParameterError("radial center has wrong dimension");
    if (!(p > 1.0) || !std::isfinite(p)) throw ParameterError("radial function needs 1 < p < inf");
    if (p == static_cast<double>(n))
        throw ParameterError("radial function |x - z0|^kappa is undefined for p = n");
    if (center.norm() < 3.0) throw ParameterError("radial center must satisfy |z0| >= 3");
    double const kappa = (p - static_cast<double>(n)) / (p - 1.0);
    return TestFunction(n, ShiftedRadial{center, p, kappa}, {});
}

TestFunction TestFunction::shifted_radial(std::size_t n, double p) {
    require_dim(n);
    return shifted_radial(n, p, 3.0 * Point::unit(n, 0));
}

TestFunction TestFunction::saddle(std::size_t n) {
    require_dim(n);
    return TestFunction(n, Saddle{}, {Point::zero(n)});
}

TestFunction TestFunction::harmonic_power(std::size_t n, int k) {
    require_dim(n);
    if (k < 2) throw ParameterError("hpow needs k >= 2");
    return TestFunction(n, HarmonicPower{k}, {Point::zero(n)});
}

TestFunction TestFunction::from_id(std::string_view id, std::size_t n, double p) {
    TestFunction fn = [&]() {
        if (id == "linear") return linear_x1(n);
        if (id == "radial") return shifted_radial(n, p);
        if (id == "saddle") return saddle(n);
        if (id.starts_with("hpow:")) {
            auto digits = id.substr(5);
            int k = 0;
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
            if (ec != std::errc{} || ptr != digits.data() + digits.size())
                throw ParameterError("malformed hpow id: " + std::string(id));
            return harmonic_power(n, k);
        }
        throw ParameterError("unknown function id: " + std::string(id));
    }();
    if (!fn.p_range().contains(p))
        throw ParameterError(std::string(id) + " is not p-harmonic for p = " + std::to_string(p));
    return fn;
}

TestFunction TestFunction::with_domain_radius(double radius) const {
    if (!(radius >= 1.25)) throw ParameterError("domain radius must be at least 1.25");
    if (auto const* r = std::get_if<ShiftedRadial>(&impl_); r && radius >= r->center.norm())
        throw ParameterError("domain radius would contain the radial singularity");
    TestFunction copy = *this;
    copy.domain_radius_ = radius;
    return copy;
}

std::string TestFunction::id() const {
    return std::visit(Overloaded{
                          [](Linear const&) -> std::string { return "linear"; },
                          [](ShiftedRadial const&) -> std::string { return "radial"; },
                          [](Saddle const&) -> std::string { return "saddle"; },
                          [](HarmonicPower const& h) -> std::string {
                              return "hpow:" + std::to_string(h.k);
                          },
                      },
                      impl_);
}

FunctionKind TestFunction::kind() const {
    return std::visit(Overloaded{
                          [](Linear const&) { return FunctionKind::Linear; },
                          [](ShiftedRadial const&) { return FunctionKind::ShiftedRadial; },
                          [](Saddle const&) { return FunctionKind::Saddle; },
                          [](HarmonicPower const&) { return FunctionKind::HarmonicPower; },
                      },
                      impl_);
}

PRange TestFunction::p_range() const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return std::visit(Overloaded{
                          [](Linear const&) { return PRange{1.0, inf}; },
                          [](ShiftedRadial const& r) { return PRange{r.p, r.p}; },
                          [](Saddle const&) { return PRange{2.0, 2.0}; },
                          [](HarmonicPower const&) { return PRange{2.0, 2.0}; },
                      },
                      impl_);
}

void TestFunction::check_domain(Point const& x) const {
    if (x.dim() != dim_)
        throw ParameterError("point has dimension " + std::to_string(x.dim()) +
                             ", function expects " + std::to_string(dim_));
    if (!x.is_finite() || !(x.norm() < domain_radius_))
        throw DomainError("point outside B(0, " + std::to_string(domain_radius_) + ")");
}

double TestFunction::eval(Point const& x) const {
    check_domain(x);
    return eval_unchecked(x);
}

Point TestFunction::gradient(Point const& x) const {
    check_domain(x);
    return gradient_unchecked(x);
}

double TestFunction::eval_unchecked(Point const& x) const {
    return std::visit(Overloaded{
                          [&](Linear const& l) { return l.coeffs.dot(x) + l.offset; },
                          [&](ShiftedRadial const& r) {
                              return std::pow(distance(x, r.center), r.kappa);
                          },
                          [&](Saddle const&) { return x[0] * x[0] - x[1] * x[1]; },
                          [&](HarmonicPower const& h) {
                              return ipow({x[0], x[1]}, h.k).real();
                          },
                      },
                      impl_);
}

Point TestFunction::gradient_unchecked(Point const& x) const {
    return std::visit(Overloaded{
                          [&](Linear const& l) { return l.coeffs; },
                          [&](ShiftedRadial const& r) {
                              Point v = x - r.center;
                              double const rr = v.norm_sq();
                              // kappa r^(kappa-2) v
                              v *= r.kappa * std::pow(rr, 0.5 * r.kappa - 1.0);
                              return v;
                          },
                          [&](Saddle const&) {
                              Point g(x.dim());
                              g[0] = 2.0 * x[0];
                              g[1] = -2.0 * x[1];
                              return g;
                          },
                          [&](HarmonicPower const& h) {
                              auto const w = static_cast<double>(h.k) * ipow({x[0], x[1]}, h.k - 1);
                              Point g(x.dim());
                              g[0] = w.real();
                              g[1] = -w.imag();
                              return g;
                          },
                      },
                      impl_);
}

Matrix TestFunction::hessian(Point const& x) const {
    check_domain(x);
    std::size_t const n = dim_;
    return std::visit(Overloaded{
                          [&](Linear const&) { return Matrix(n); },
                          [&](ShiftedRadial const& r) {
                              Point const v = x - r.center;
                              double const rr = v.norm_sq();
                              double const scale = r.kappa * std::pow(rr, 0.5 * r.kappa - 1.0);
                              // kappa r^(kappa-2) (I + (kappa-2) v v^T / r^2)
                              Matrix h = Matrix::identity(n) + ((r.kappa - 2.0) / rr) * Matrix::outer(v, v);
                              h *= scale;
                              return h;
                          },
                          [&](Saddle const&) {
                              Matrix h(n);
                              h(0, 0) = 2.0;
                              h(1, 1) = -2.0;
                              return h;
                          },
                          [&](HarmonicPower const& hp) {
                              Matrix h(n);
                              if (hp.k >= 2) {
                                  auto const s = static_cast<double>(hp.k * (hp.k - 1)) *
                                                 ipow({x[0], x[1]}, hp.k - 2);
                                  h(0, 0) = s.real();
                                  h(0, 1) = h(1, 0) = -s.imag();
                                  h(1, 1) = -s.real();
                              }
                              return h;
                          },
                      },
                      impl_);
}

double p_laplacian_residual(TestFunction const& fn, Point const& x, double p) {
    Point const g = fn.gradient(x);
    double const g2 = g.norm_sq();
    if (!(std::sqrt(g2) > kGradZeroTol))
        throw UndefinedOperatorError("normalized p-Laplacian undefined at a critical point");
    Matrix const h = fn.hessian(x);
    double const infinity_part = g.dot(h * g) / g2;
    return h.trace() + (p - 2.0) * infinity_part;
}

std::vector<std::string> catalog_ids() { return {"linear", "radial", "saddle", "hpow:3"}; }

}  // namespace gradwalk
