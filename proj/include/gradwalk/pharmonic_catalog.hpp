#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gradwalk/point.hpp"

namespace gradwalk {

/// Gradients with norm at or below this are treated as vanishing.
inline constexpr double kGradZeroTol = 1e-12;

/// Default radius of the ball B(0, 1 + gamma) on which catalog functions live.
inline constexpr double kDefaultDomainRadius = 1.5;

enum class FunctionKind { Linear, ShiftedRadial, Saddle, HarmonicPower };

/// Closed interval of exponents p for which a function is p-harmonic.
/// The lower end is always further restricted to p > 1.
struct PRange {
    double min = 1.0;
    double max = 1.0;

    bool contains(double p) const { return p > 1.0 && p >= min && p <= max; }
};

/// An analytic p-harmonic function u on B(0, domain_radius) with exact
/// value, gradient and Hessian.
///
/// Catalog entries:
///  - linear:  u(x) = a.x + b, p-harmonic for every p
///  - radial:  u(x) = |x - z0|^kappa, kappa = (p - n)/(p - 1), p != n, |z0| >= 3
///  - saddle:  u(x) = x1^2 - x2^2 (p = 2), critical point at the origin
///  - hpow:k:  u(x) = Re((x1 + i x2)^k) (p = 2), critical point at the origin
class TestFunction {
public:
    static TestFunction linear(Point coeffs, double offset = 0.0);
    /// u(x) = x1 in dimension n.
    static TestFunction linear_x1(std::size_t n);
    static TestFunction shifted_radial(std::size_t n, double p, Point center);
    /// Radial function centred at 3 e1.
    static TestFunction shifted_radial(std::size_t n, double p);
    static TestFunction saddle(std::size_t n);
    static TestFunction harmonic_power(std::size_t n, int k);

    /// Resolve a catalog id ("linear", "radial", "saddle", "hpow:k").
    /// `p` fixes the exponent of the radial entry and is validated against the
    /// admissible range of the others.
    static TestFunction from_id(std::string_view id, std::size_t n, double p);

    /// Copy with a different domain radius (must be at least 1.25).
    TestFunction with_domain_radius(double radius) const;

    std::string id() const;
    FunctionKind kind() const;
    std::size_t dim() const { return dim_; }
    PRange p_range() const;
    double domain_radius() const { return domain_radius_; }
    std::vector<Point> const& zero_set() const { return zero_set_; }

    double eval(Point const& x) const;
    Point gradient(Point const& x) const;
    Matrix hessian(Point const& x) const;

    /// Same as eval/gradient without the domain check; callers guarantee
    /// |x| < domain_radius and matching dimension.
    double eval_unchecked(Point const& x) const;
    Point gradient_unchecked(Point const& x) const;

    /// Throws DomainError unless |x| < domain_radius.
    void check_domain(Point const& x) const;

private:
    struct Linear {
        Point coeffs;
        double offset;
    };
    struct ShiftedRadial {
        Point center;
        double p;
        double kappa;
    };
    struct Saddle {};
    struct HarmonicPower {
        int k;
    };
    using Variant = std::variant<Linear, ShiftedRadial, Saddle, HarmonicPower>;

    TestFunction(std::size_t dim, Variant v, std::vector<Point> zero_set)
        : dim_(dim), impl_(std::move(v)), zero_set_(std::move(zero_set)) {}

    std::size_t dim_;
    Variant impl_;
    std::vector<Point> zero_set_;
    double domain_radius_ = kDefaultDomainRadius;
};

/// Normalized p-Laplacian  Delta u + (p - 2) |grad u|^-2 <D^2u grad u, grad u>.
/// Throws UndefinedOperatorError where the gradient vanishes.
double p_laplacian_residual(TestFunction const& fn, Point const& x, double p);

/// Catalog ids accepted by TestFunction::from_id (hpow shown with k = 3).
std::vector<std::string> catalog_ids();

}  // namespace gradwalk
