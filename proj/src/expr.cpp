#include "demi/expr.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace demi {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string fmt(Complex v) {
    if (v.imag() == 0.0) return fmt(v.real());
    std::ostringstream os;
    os.precision(6);
    os << "(" << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "i)";
    return os.str();
}

double horner(const std::vector<double>& p, double u) {
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * u + *it;
    return acc;
}

std::vector<double> poly_derivative(const std::vector<double>& p) {
    if (p.size() <= 1) return {0.0};
    std::vector<double> d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<double>(i);
    return d;
}

double binomial(unsigned n, unsigned k) {
    double r = 1.0;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

class ZeroNode final : public Node {
public:
    Complex eval(double, unsigned) const override { return 0.0; }
    std::string describe() const override { return "0"; }
    bool is_zero() const override { return true; }
};

class ConstantNode final : public Node {
public:
    explicit ConstantNode(Complex c) : c_(c) {}
    Complex eval(double, unsigned order) const override { return order == 0 ? c_ : Complex(0.0); }
    std::string describe() const override { return fmt(c_); }

private:
    Complex c_;
};

// d^k/du^k exp(1/(u^2-1)) = P_k(u) (u^2-1)^(-2k) exp(1/(u^2-1)), with
// P_{k+1} = P_k' (u^2-1)^2 - 4k u (u^2-1) P_k - 2u P_k.
const std::vector<double>& bump_poly(unsigned k) {
    static const std::vector<std::vector<double>> table = [] {
        constexpr unsigned kMax = 48;
        std::vector<std::vector<double>> t;
        t.push_back({1.0});
        for (unsigned k = 0; k < kMax; ++k) {
            const auto& p = t.back();
            std::vector<double> next(p.size() + 3, 0.0);
            auto dp = poly_derivative(p);
            // (u^2-1)^2 = u^4 - 2u^2 + 1
            for (std::size_t i = 0; i < dp.size(); ++i) {
                next[i] += dp[i];
                next[i + 2] -= 2.0 * dp[i];
                next[i + 4] += dp[i];
            }
            // -(4k u (u^2-1) + 2u) P = (-(4k) u^3 + (4k - 2) u) P
            for (std::size_t i = 0; i < p.size(); ++i) {
                next[i + 3] -= 4.0 * k * p[i];
                next[i + 1] += (4.0 * k - 2.0) * p[i];
            }
            t.push_back(std::move(next));
        }
        return t;
    }();
    if (k >= table.size()) throw std::out_of_range("bump derivative order too large");
    return table[k];
}

class BumpNode final : public Node {
public:
    BumpNode(double c, double h) : c_(c), h_(h) {}
    Complex eval(double x, unsigned order) const override {
        const double u = (x - c_) / h_;
        const double q = u * u - 1.0;
        if (!(q < 0.0)) return 0.0;
        if (order == 0) return std::exp(1.0 / q);
        const double logmag = 1.0 / q - 2.0 * order * std::log(-q) - order * std::log(h_);
        return horner(bump_poly(order), u) * std::exp(logmag);
    }
    std::string describe() const override { return "bump(" + fmt(c_) + "," + fmt(h_) + ")"; }

private:
    double c_, h_;
};

class PolyGaussNode final : public Node {
public:
    PolyGaussNode(double c, double s, std::vector<double> p) : c_(c), s_(s), p_(std::move(p)) {}
    Complex eval(double x, unsigned order) const override {
        const double u = (x - c_) / s_;
        const double g = std::exp(-u * u);
        if (g == 0.0) return 0.0;
        std::vector<double> q = p_;
        for (unsigned k = 0; k < order; ++k) {
            auto dq = poly_derivative(q);
            std::vector<double> next(q.size() + 1, 0.0);
            for (std::size_t i = 0; i < dq.size(); ++i) next[i] += dq[i];
            for (std::size_t i = 0; i < q.size(); ++i) next[i + 1] -= 2.0 * q[i];
            q = std::move(next);
        }
        return horner(q, u) * g * std::pow(s_, -static_cast<double>(order));
    }
    std::string describe() const override {
        if (p_.size() == 1 && p_[0] == 1.0) return "gauss(" + fmt(c_) + "," + fmt(s_) + ")";
        return "polygauss(" + fmt(c_) + "," + fmt(s_) + ",deg=" + std::to_string(p_.size() - 1) + ")";
    }

private:
    double c_, s_;
    std::vector<double> p_;
};

class PolynomialNode final : public Node {
public:
    explicit PolynomialNode(std::vector<Complex> c) : c_(std::move(c)) {}
    Complex eval(double x, unsigned order) const override {
        if (order >= c_.size()) return 0.0;
        Complex acc = 0.0;
        for (std::size_t i = c_.size(); i-- > order;) {
            double f = 1.0;
            for (unsigned j = 0; j < order; ++j) f *= static_cast<double>(i - j);
            acc = acc * x + c_[i] * f;
        }
        return acc;
    }
    std::string describe() const override {
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == Complex(0.0)) continue;
            if (!s.empty()) s += "+";
            s += fmt(c_[i]);
            if (i > 0) s += "x^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

private:
    std::vector<Complex> c_;
};

class CosineNode final : public Node {
public:
    CosineNode(double a, double w, double ph) : a_(a), w_(w), ph_(ph) {}
    Complex eval(double x, unsigned order) const override {
        return a_ * std::pow(w_, static_cast<double>(order)) *
               std::cos(w_ * x + ph_ + order * std::numbers::pi / 2.0);
    }
    std::string describe() const override {
        return fmt(a_) + "cos(" + fmt(w_) + "x+" + fmt(ph_) + ")";
    }

private:
    double a_, w_, ph_;
};

class SumNode final : public Node {
public:
    explicit SumNode(std::vector<Term> t) : t_(std::move(t)) {}
    Complex eval(double x, unsigned order) const override {
        Complex acc = 0.0;
        for (const auto& [c, e] : t_) acc += c * e->eval(x, order);
        return acc;
    }
    std::string describe() const override {
        std::string s;
        for (const auto& [c, e] : t_) {
            if (!s.empty()) s += " + ";
            s += (c == Complex(1.0) ? "" : fmt(c) + "*") + e->describe();
        }
        return "(" + s + ")";
    }
    unsigned derivative_depth() const override {
        unsigned d = ~0u;
        for (const auto& [c, e] : t_) d = std::min(d, e->derivative_depth());
        return t_.empty() ? 0 : d;
    }

private:
    std::vector<Term> t_;
};

class ProductNode final : public Node {
public:
    ProductNode(NodePtr a, NodePtr b) : a_(std::move(a)), b_(std::move(b)) {}
    Complex eval(double x, unsigned order) const override {
        Complex acc = 0.0;
        for (unsigned j = 0; j <= order; ++j)
            acc += binomial(order, j) * a_->eval(x, j) * b_->eval(x, order - j);
        return acc;
    }
    std::string describe() const override { return a_->describe() + "*" + b_->describe(); }

private:
    NodePtr a_, b_;
};

class ShiftNode final : public Node {
public:
    ShiftNode(NodePtr e, double dx) : e_(std::move(e)), dx_(dx) {}
    Complex eval(double x, unsigned order) const override { return e_->eval(x + dx_, order); }
    std::string describe() const override { return e_->describe() + "(.+" + fmt(dx_) + ")"; }
    unsigned derivative_depth() const override { return e_->derivative_depth(); }
    const NodePtr& inner() const { return e_; }
    double dx() const { return dx_; }

private:
    NodePtr e_;
    double dx_;
};

class DerivNode final : public Node {
public:
    DerivNode(NodePtr e, unsigned k) : e_(std::move(e)), k_(k) {}
    Complex eval(double x, unsigned order) const override { return e_->eval(x, order + k_); }
    std::string describe() const override { return "D" + std::to_string(k_) + "[" + e_->describe() + "]"; }
    unsigned derivative_depth() const override { return k_ + e_->derivative_depth(); }
    const NodePtr& inner() const { return e_; }
    unsigned order() const { return k_; }

private:
    NodePtr e_;
    unsigned k_;
};

class PrimitiveNode final : public Node {
public:
    PrimitiveNode(NodePtr f, Interval r, const QuadratureConfig& cfg)
        : f_(std::move(f)), r_(r), cfg_(cfg) {
        cfg_.abs_tol = cfg.abs_tol / kPanels;
        w_ = r_.width() / kPanels;
        cum_.assign(kPanels + 1, 0.0);
        for (int j = 0; j < kPanels; ++j)
            cum_[j + 1] = cum_[j] + integrate_interval(value_fn(), r_.lo + j * w_, r_.lo + (j + 1) * w_, cfg_);
    }
    Complex eval(double x, unsigned order) const override {
        if (order > 0) return f_->eval(x, order - 1);
        if (x <= r_.lo) return 0.0;
        if (x >= r_.hi) return cum_.back();
        int j = std::min(kPanels - 1, static_cast<int>((x - r_.lo) / w_));
        const double a = r_.lo + j * w_;
        return cum_[j] + integrate_interval(value_fn(), a, x, cfg_);
    }
    std::string describe() const override { return "prim[" + f_->describe() + "]"; }

private:
    static constexpr int kPanels = 64;
    ScalarFn value_fn() const {
        return [f = f_.get()](double t) { return f->eval(t, 0); };
    }
    NodePtr f_;
    Interval r_;
    QuadratureConfig cfg_;
    double w_;
    std::vector<Complex> cum_;
};

}  // namespace

NodePtr zero_node() {
    static const NodePtr z = std::make_shared<ZeroNode>();
    return z;
}

NodePtr constant_node(Complex c) {
    if (c == Complex(0.0)) return zero_node();
    return std::make_shared<ConstantNode>(c);
}

NodePtr bump_node(double c, double h) { return std::make_shared<BumpNode>(c, h); }

NodePtr polygauss_node(double c, double s, std::vector<double> poly) {
    if (poly.empty()) return zero_node();
    return std::make_shared<PolyGaussNode>(c, s, std::move(poly));
}

NodePtr polynomial_node(std::vector<Complex> coeffs) {
    while (!coeffs.empty() && coeffs.back() == Complex(0.0)) coeffs.pop_back();
    if (coeffs.empty()) return zero_node();
    return std::make_shared<PolynomialNode>(std::move(coeffs));
}

NodePtr cosine_node(double amp, double omega, double phase) {
    return std::make_shared<CosineNode>(amp, omega, phase);
}

NodePtr sum_node(std::vector<Term> terms) {
    std::erase_if(terms, [](const Term& t) { return t.second->is_zero() || t.first == Complex(0.0); });
    if (terms.empty()) return zero_node();
    if (terms.size() == 1 && terms[0].first == Complex(1.0)) return terms[0].second;
    return std::make_shared<SumNode>(std::move(terms));
}

NodePtr product_node(NodePtr a, NodePtr b) {
    if (a->is_zero() || b->is_zero()) return zero_node();
    return std::make_shared<ProductNode>(std::move(a), std::move(b));
}

NodePtr shift_node(NodePtr e, double dx) {
    if (dx == 0.0 || e->is_zero()) return e;
    if (auto s = std::dynamic_pointer_cast<const ShiftNode>(e))
        return std::make_shared<ShiftNode>(s->inner(), s->dx() + dx);
    return std::make_shared<ShiftNode>(std::move(e), dx);
}

NodePtr deriv_node(NodePtr e, unsigned k) {
    if (k == 0 || e->is_zero()) return e;
    if (auto d = std::dynamic_pointer_cast<const DerivNode>(e))
        return std::make_shared<DerivNode>(d->inner(), d->order() + k);
    return std::make_shared<DerivNode>(std::move(e), k);
}

NodePtr primitive_node(NodePtr integrand, Interval range, const QuadratureConfig& cfg) {
    if (integrand->is_zero()) return zero_node();
    return std::make_shared<PrimitiveNode>(std::move(integrand), range, cfg);
}

std::vector<double> hermite_coefficients(unsigned n) {
    std::vector<double> prev{1.0};
    if (n == 0) return prev;
    std::vector<double> cur{0.0, 2.0};
    for (unsigned k = 1; k < n; ++k) {
        std::vector<double> next(cur.size() + 1, 0.0);
        for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2.0 * cur[i];
        for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= 2.0 * k * prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace demi
