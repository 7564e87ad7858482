#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

#include "demi/testfn.hpp"

namespace demi {

using Json = nlohmann::ordered_json;

/// Control function gamma in C(0).
class GammaFn {
public:
    enum class Kind { Identity, Linear, Sqrt, Composed, Custom };

    static GammaFn identity();
    static GammaFn linear(Complex c);
    static GammaFn sqrt_abs();
    static GammaFn custom(std::string name, std::function<Complex(Complex)> fn);
    /// t -> outer(inner(t)); identities are absorbed.
    static GammaFn compose(const GammaFn& outer, const GammaFn& inner);

    Complex operator()(Complex t) const { return fn_(t); }
    double magnitude(Complex t) const { return std::abs(fn_(t)); }
    Kind kind() const { return kind_; }
    Complex coefficient() const { return c_; }
    const std::string& name() const { return name_; }
    Json to_json() const;

    /// Largest sampled |gamma(t)| over the closed unit disk.
    double sup_on_unit_disk() const;

private:
    GammaFn(Kind k, Complex c, std::string name, std::function<Complex(Complex)> fn)
        : kind_(k), c_(c), name_(std::move(name)), fn_(std::move(fn)) {}
    Kind kind_;
    Complex c_;
    std::string name_;
    std::function<Complex(Complex)> fn_;
};

struct GammaCheck {
    bool dominates_identity = true;  ///< |t| <= |gamma(t)| on sampled |t| <= 1
    bool vanishes_at_zero = true;    ///< gamma(0) = 0 and |gamma(t)| -> 0
    bool monotone = true;            ///< |gamma(a)| <= |gamma(b)| for |a| <= |b| <= 1
    double worst_violation = 0.0;
};
GammaCheck check_gamma(const GammaFn& g, int samples = 2000, std::uint64_t seed = 1);

/// One constraint of a neighbourhood of 0 in E. A test function eta satisfies
/// it when the measure of map(eta) is below eps; map is the identity unless
/// the constraint was pulled back through a linear operator.
struct Constraint {
    enum class Kind { Ball, FunctionalBound };
    Kind kind = Kind::Ball;
    unsigned p = 0;
    double eps = 1.0;
    SpaceTag space = SpaceTag::schwartz();
    std::function<Complex(const TestFunction&)> functional;
    std::string label;
    std::vector<std::function<TestFunction(const TestFunction&)>> maps;
    std::vector<std::string> map_labels;

    TestFunction mapped(const TestFunction& eta) const;
    double measure(const TestFunction& eta, const QuadratureConfig& cfg) const;
    Json to_json() const;
};

/// Finite intersection of constraints; empty means the whole space.
class Neighborhood {
public:
    static Neighborhood whole() { return {}; }
    static Neighborhood ball(unsigned p, double eps, SpaceTag space);
    static Neighborhood functional_bound(std::string label, std::function<Complex(const TestFunction&)> fn, double eps);

    Neighborhood intersect(const Neighborhood& o) const;
    /// {eta : map(eta) in this}.
    Neighborhood pulled_back(std::function<TestFunction(const TestFunction&)> map, std::string label) const;
    /// Image under the dual derivative of order k: balls move from p to p + k,
    /// other constraints are pulled back through eta -> (-1)^k eta^(k).
    Neighborhood derivative_shift(unsigned k) const;

    bool contains(const TestFunction& eta, const QuadratureConfig& cfg) const;
    /// Factor s in (0, 1] with s*eta strictly inside every ball-type bound, by
    /// homogeneity of seminorms; nonlinear bounds are handled by the caller.
    double fit_factor(const TestFunction& eta, const QuadratureConfig& cfg, double margin = 0.9) const;
    bool is_whole() const { return constraints_.empty(); }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    Json to_json() const;

private:
    std::vector<Constraint> constraints_;
};

enum class ClassTag { Linear, L, K };
std::string to_string(ClassTag c);

/// Continuous demi-linear functional on a test-function space.
class DemiDistribution {
public:
    using Evaluator = std::function<Complex(const TestFunction&)>;

    struct Info {
        std::string label;
        ClassTag cls = ClassTag::Linear;
        GammaFn gamma = GammaFn::identity();
        Neighborhood nbhd;
        SpaceTag space = SpaceTag::schwartz();
        bool real_field = false;  ///< demi-linearity asserted for real scalars only
        Json descriptor;
        QuadratureConfig cfg;
    };

    DemiDistribution(Evaluator eval, Info info);

    /// Throws std::invalid_argument if xi is outside the functional's space.
    Complex operator()(const TestFunction& xi) const;

    const std::string& label() const { return info_.label; }
    ClassTag class_tag() const { return info_.cls; }
    const GammaFn& gamma() const { return info_.gamma; }
    const Neighborhood& nbhd() const { return info_.nbhd; }
    const SpaceTag& space() const { return info_.space; }
    bool real_field() const { return info_.real_field; }
    const QuadratureConfig& quadrature() const { return info_.cfg; }
    const Info& info() const { return info_; }
    const Evaluator& evaluator() const { return eval_; }
    Json to_json() const;

    DemiDistribution relabeled(std::string label) const;

private:
    Evaluator eval_;
    Info info_;
};

/// Finite linear combination sum_k t_k f_k.
class SpanElement {
public:
    SpanElement() = default;
    SpanElement(const DemiDistribution& f);  // NOLINT: implicit embedding
    explicit SpanElement(std::vector<std::pair<Complex, DemiDistribution>> terms);

    Complex operator()(const TestFunction& xi) const;
    SpanElement operator+(const SpanElement& o) const;
    SpanElement scaled(Complex t) const;
    const std::vector<std::pair<Complex, DemiDistribution>>& terms() const { return terms_; }
    Json to_json() const;

private:
    std::vector<std::pair<Complex, DemiDistribution>> terms_;
};

Complex apply(const DemiDistribution& f, const TestFunction& xi);
Complex apply(const SpanElement& f, const TestFunction& xi);

// Built-in functionals ----------------------------------------------------

/// xi -> integral of g xi. Linear.
DemiDistribution regular(const Multiplier& g, const QuadratureConfig& cfg = {});
/// xi -> integral of |g xi|. Class K, gamma_0(t) = t, U = whole space.
DemiDistribution abs_regular(const Multiplier& g, const QuadratureConfig& cfg = {});
/// xi -> integral of |sin xi| on D_1. Class K, gamma = (pi/2)t, U = {sup|eta| < 1}.
DemiDistribution sin_abs(const QuadratureConfig& cfg = {});
/// xi -> i * integral over [-1,1] of (e^|xi| - 1) on S. Class L, gamma = e t, U = {sup|eta| < 1}.
DemiDistribution exp_abs(const QuadratureConfig& cfg = {});
DemiDistribution dirac();
/// xi -> (-1)^k xi^(k)(0).
DemiDistribution dirac_derivative(unsigned k);
/// Scalar multiple t f, same class data as f.
DemiDistribution scaled(Complex t, const DemiDistribution& f);

/// Scalar demi-linear map h with declared class, gamma and radius eps:
/// h(z + a w) = r h(z) + s h(w) for |w| < eps, |a| <= 1.
struct ScalarMap {
    std::string name;
    std::function<Complex(Complex)> fn;
    ClassTag cls = ClassTag::K;
    GammaFn gamma = GammaFn::identity();
    double eps = std::numeric_limits<double>::infinity();
    bool real_only = false;

    static ScalarMap abs();
    static ScalarMap sin_abs();
    static ScalarMap exp_abs_minus_one();
    static ScalarMap sine();
    static ScalarMap custom(std::string name, std::function<Complex(Complex)> fn, ClassTag cls, GammaFn gamma,
                            double eps, bool real_only = false);
};

/// xi -> h(f(xi)). Result gamma is gamma_h o gamma_f; the neighbourhood adds
/// |f(eta)| < eps_h. f must be Linear, or K with |gamma_f| <= 1 on the unit
/// disk; h = |z| additionally accepts class L.
DemiDistribution compose(const ScalarMap& h, const DemiDistribution& f);

// Feasibility check ---------------------------------------------------------

struct WitnessReport {
    double lhs_gap = 0.0;
    double bound = 0.0;
    bool feasible = false;
    ClassTag class_used = ClassTag::K;
    std::string sample;
    Complex f_xi, f_eta, f_sum;
    Json to_json() const;
};

/// Disk reduction of the witness relations: L-feasible iff
/// |f(xi+t eta) - f(xi)| <= |gamma(t)|(|f(xi)| + |f(eta)|) + slack, K-feasible
/// iff the same with |f(xi)| dropped. Slack = 10 * abs_tol.
/// Throws PreconditionViolation if eta is outside f's neighbourhood or |t| > 1.
WitnessReport check_demi_linearity(const DemiDistribution& f, const TestFunction& xi, const TestFunction& eta,
                                   Complex t, ClassTag cls);

struct WStarReport {
    std::vector<double> sup_gaps;  ///< index k-1 holds sup over B at k
    bool monotone_from(int k0, double slack = 0.0) const;
    double gap_at(int k) const { return sup_gaps.at(static_cast<std::size_t>(k - 1)); }
};

WStarReport sample_w_star_uniformity(const std::function<DemiDistribution(int)>& f_seq, const DemiDistribution& f,
                                     const std::vector<TestFunction>& B, int k_max);

}  // namespace demi
