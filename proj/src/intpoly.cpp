#include "sunitrec/intpoly.hpp"

#include <algorithm>
#include <sstream>

namespace sunitrec {

namespace {
const mpz_class kZero = 0;
}

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    normalize();
}

IntPoly IntPoly::monomial(const mpz_class& coef, size_t deg) {
    if (coef == 0) return IntPoly();
    std::vector<mpz_class> c(deg + 1, kZero);
    c[deg] = coef;
    return IntPoly(std::move(c));
}

void IntPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpz_class& IntPoly::coeff(size_t i) const { return i < c_.size() ? c_[i] : kZero; }

const mpz_class& IntPoly::leading() const {
    if (c_.empty()) throw InternalError("IntPoly::leading of zero polynomial");
    return c_.back();
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<mpz_class> c(std::max(c_.size(), o.c_.size()), kZero);
    for (size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
    return IntPoly(std::move(c));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<mpz_class> c(std::max(c_.size(), o.c_.size()), kZero);
    for (size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - o.coeff(i);
    return IntPoly(std::move(c));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<mpz_class> c(c_.size() + o.c_.size() - 1, kZero);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(c));
}

IntPoly IntPoly::neg() const {
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return IntPoly(std::move(c));
}

IntPoly IntPoly::mul_mpz(const mpz_class& z) const {
    if (z == 0) return IntPoly();
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * z;
    return IntPoly(std::move(c));
}

IntPoly IntPoly::mul_xpow(size_t s) const {
    if (is_zero() || s == 0) return s == 0 ? *this : IntPoly();
    std::vector<mpz_class> c(c_.size() + s, kZero);
    for (size_t i = 0; i < c_.size(); ++i) c[i + s] = c_[i];
    return IntPoly(std::move(c));
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<mpz_class> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * static_cast<long>(i);
    return IntPoly(std::move(c));
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& v : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive() const {
    if (is_zero()) return IntPoly();
    mpz_class g = content();
    if (leading() < 0) g = -g;
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] / g;
    return IntPoly(std::move(c));
}

mpz_class IntPoly::eval_z(const mpz_class& x) const {
    mpz_class acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Ball IntPoly::eval_ball(const Ball& x, Prec p) const {
    if (is_zero()) return Ball::zero();
    Ball acc = Ball::exact_int(c_.back());
    for (size_t i = c_.size() - 1; i-- > 0;)
        acc = Ball::add(Ball::mul(acc, x, p), Ball::exact_int(c_[i]), p);
    return acc;
}

std::string IntPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        mpz_class a = c_[i];
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        mpz_class m = abs(a);
        if (m != 1 || i == 0) os << m.get_str();
        if (i >= 1) {
            if (m != 1) os << "*";
            os << var;
            if (i >= 2) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

bool try_exact_div(const IntPoly& num, const IntPoly& den, IntPoly* quot) {
    if (den.is_zero()) throw InternalError("exact_div by zero polynomial");
    if (num.is_zero()) {
        if (quot) *quot = IntPoly();
        return true;
    }
    if (num.degree() < den.degree()) return false;
    std::vector<mpz_class> r = num.coeffs();
    int dn = num.degree(), dd = den.degree();
    std::vector<mpz_class> q(dn - dd + 1, 0);
    const mpz_class& lead = den.leading();
    for (int d = dn; d >= dd; --d) {
        if (r[d] == 0) continue;
        mpz_class qc, rem;
        mpz_tdiv_qr(qc.get_mpz_t(), rem.get_mpz_t(), r[d].get_mpz_t(), lead.get_mpz_t());
        if (rem != 0) return false;
        q[d - dd] = qc;
        for (int j = 0; j <= dd; ++j) r[d - dd + j] -= qc * den.coeff(j);
    }
    for (const auto& v : r)
        if (v != 0) return false;
    if (quot) *quot = IntPoly(std::move(q));
    return true;
}

IntPoly exact_div(const IntPoly& num, const IntPoly& den) {
    IntPoly q;
    if (!try_exact_div(num, den, &q)) throw InternalError("exact_div: division not exact");
    return q;
}

namespace {
// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a reduced modulo b.
IntPoly pseudo_rem(IntPoly a, const IntPoly& b) {
    const mpz_class& lb = b.leading();
    while (!a.is_zero() && a.degree() >= b.degree()) {
        mpz_class la = a.leading();
        int shift = a.degree() - b.degree();
        a = a.mul_mpz(lb) - b.mul_mpz(la).mul_xpow(static_cast<size_t>(shift));
    }
    return a;
}
}  // namespace

IntPoly poly_gcd(const IntPoly& a0, const IntPoly& b0) {
    if (a0.is_zero()) return b0.primitive();
    if (b0.is_zero()) return a0.primitive();
    IntPoly a = a0.primitive(), b = b0.primitive();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = pseudo_rem(a, b);
        a = std::move(b);
        b = r.is_zero() ? IntPoly() : r.primitive();
    }
    return a.primitive();
}

mpz_class poly_resultant(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    int n = a.degree(), m = b.degree();
    if (n == 0) {
        mpz_class out;
        mpz_pow_ui(out.get_mpz_t(), a.leading().get_mpz_t(), static_cast<unsigned long>(m));
        return out;
    }
    if (m == 0) {
        mpz_class out;
        mpz_pow_ui(out.get_mpz_t(), b.leading().get_mpz_t(), static_cast<unsigned long>(n));
        return out;
    }
    int dim = n + m;
    std::vector<std::vector<mpz_class>> M(dim, std::vector<mpz_class>(dim, kZero));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) M[i][i + j] = a.coeff(static_cast<size_t>(n - j));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[m + i][i + j] = b.coeff(static_cast<size_t>(m - j));

    // Bareiss fraction-free elimination with row pivoting.
    int sign = 1;
    mpz_class prev = 1;
    for (int k = 0; k + 1 < dim; ++k) {
        if (M[k][k] == 0) {
            int r = -1;
            for (int i = k + 1; i < dim; ++i)
                if (M[i][k] != 0) {
                    r = i;
                    break;
                }
            if (r < 0) return 0;
            std::swap(M[k], M[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < dim; ++i) {
            for (int j = k + 1; j < dim; ++j) {
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    return sign > 0 ? M[dim - 1][dim - 1] : mpz_class(-M[dim - 1][dim - 1]);
}

IntPoly squarefree_part(const IntPoly& p) {
    if (p.is_zero()) throw InternalError("squarefree_part of zero polynomial");
    if (p.degree() == 0) return IntPoly({1});
    IntPoly g = poly_gcd(p, p.derivative());
    return exact_div(p.primitive(), g).primitive();
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p) {
    if (p.is_zero()) throw InternalError("squarefree_decomposition of zero polynomial");
    std::vector<std::pair<IntPoly, int>> out;
    IntPoly f = p.primitive();
    if (f.degree() == 0) return out;
    IntPoly fp = f.derivative();
    IntPoly a = poly_gcd(f, fp);
    IntPoly b = exact_div(f, a);          // product of distinct factors
    IntPoly c = exact_div(fp, a);
    IntPoly d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        IntPoly t = poly_gcd(b, d);
        if (t.degree() > 0) out.emplace_back(t, i);
        b = exact_div(b, t);
        c = exact_div(d, t);
        d = c - b.derivative();
    }
    return out;
}

IntPoly cyclotomic(unsigned long q) {
    if (q == 0) throw InternalError("cyclotomic(0)");
    std::vector<unsigned long> divs;
    for (unsigned long d = 1; d * d <= q; ++d) {
        if (q % d == 0) {
            divs.push_back(d);
            if (d != q / d) divs.push_back(q / d);
        }
    }
    std::sort(divs.begin(), divs.end());
    std::vector<std::pair<unsigned long, IntPoly>> phi;
    for (unsigned long d : divs) {
        // x^d - 1 divided by all Phi_e with e | d, e < d
        std::vector<mpz_class> c(d + 1, kZero);
        c[0] = -1;
        c[d] = 1;
        IntPoly num(std::move(c));
        for (const auto& [e, pe] : phi)
            if (d % e == 0 && e < d) num = exact_div(num, pe);
        phi.emplace_back(d, std::move(num));
    }
    return phi.back().second;
}

unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

std::vector<mpz_class> interpolation_nodes(int npts) {
    std::vector<mpz_class> xs;
    xs.reserve(static_cast<size_t>(npts));
    for (long step = 0; static_cast<int>(xs.size()) < npts; ++step) {
        if (step == 0) {
            xs.emplace_back(0);
        } else {
            xs.emplace_back(step);
            if (static_cast<int>(xs.size()) < npts) xs.emplace_back(-step);
        }
    }
    return xs;
}

// Exact interpolation of an integer polynomial from values at distinct
// integer nodes (Newton divided differences over Q).
IntPoly interpolate_integer_poly(const std::vector<mpz_class>& xs, const std::vector<mpz_class>& ys) {
    // Newton divided differences over Q, then clear to Z (must be integral).
    std::vector<mpq_class> coef(ys.size());
    for (size_t i = 0; i < ys.size(); ++i) coef[i] = mpq_class(ys[i]);
    for (size_t j = 1; j < coef.size(); ++j) {
        for (size_t i = coef.size(); i-- > j;) {
            mpq_class dx = mpq_class(xs[i]) - mpq_class(xs[i - j]);
            coef[i] = (coef[i] - coef[i - 1]) / dx;
        }
    }
    // Horner expansion of the Newton form into monomial coefficients.
    std::vector<mpq_class> poly;  // lowest-first
    for (size_t i = coef.size(); i-- > 0;) {
        // poly = poly * (x - xs[i]) + coef[i]
        std::vector<mpq_class> next(poly.size() + 1);
        for (size_t d = 0; d < poly.size(); ++d) {
            next[d + 1] += poly[d];
            next[d] -= poly[d] * mpq_class(xs[i]);
        }
        next[0] += coef[i];
        poly = std::move(next);
    }
    std::vector<mpz_class> zc(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) {
        mpq_class v = poly[i];
        v.canonicalize();
        if (v.get_den() != 1) throw InternalError("interpolation not integral");
        zc[i] = v.get_num();
    }
    return IntPoly(std::move(zc));
}

}  // namespace

IntPoly ratio_poly(const IntPoly& p) {
    if (p.is_zero() || p.degree() < 1) throw InternalError("ratio_poly needs degree >= 1");
    if (p.coeff(0) == 0) throw InternalError("ratio_poly requires p(0) != 0");
    int k = p.degree();
    // R(x) = Res_y(p(y), q_x(y)) with q_x(y) = x^k p(y/x) = sum_i c_i x^(k-i) y^i.
    // Entries of the Sylvester matrix are polynomials in x of degree <= k, so
    // deg R <= k^2: sample at k^2 + 1 integer nodes and interpolate exactly.
    int npts = k * k + 1;
    std::vector<mpz_class> xs = interpolation_nodes(npts);
    std::vector<mpz_class> ys;
    ys.reserve(static_cast<size_t>(npts));
    for (const mpz_class& nu : xs) {
        std::vector<mpz_class> qc(static_cast<size_t>(k) + 1);
        for (int i = 0; i <= k; ++i) {
            mpz_class powv;
            mpz_pow_ui(powv.get_mpz_t(), nu.get_mpz_t(), static_cast<unsigned long>(k - i));
            qc[static_cast<size_t>(i)] = p.coeff(static_cast<size_t>(i)) * powv;
        }
        ys.push_back(poly_resultant(p, IntPoly(std::move(qc))));
    }
    return interpolate_integer_poly(xs, ys);
}

IntPoly pair_product_poly(const IntPoly& p) {
    if (p.is_zero() || p.degree() < 1) throw InternalError("pair_product_poly needs degree >= 1");
    if (p.coeff(0) == 0) throw InternalError("pair_product_poly requires p(0) != 0");
    int k = p.degree();
    // P(x) = Res_y(p(y), q_x(y)) with q_x(y) = y^k p(x/y) = sum_i c_i x^i y^(k-i),
    // whose roots (over all x) are the pairwise products of roots of p.
    int npts = k * k + 1;
    std::vector<mpz_class> xs = interpolation_nodes(npts);
    std::vector<mpz_class> ys;
    ys.reserve(static_cast<size_t>(npts));
    for (const mpz_class& nu : xs) {
        std::vector<mpz_class> qc(static_cast<size_t>(k) + 1);
        for (int i = 0; i <= k; ++i) {
            mpz_class powv;
            mpz_pow_ui(powv.get_mpz_t(), nu.get_mpz_t(), static_cast<unsigned long>(i));
            qc[static_cast<size_t>(k - i)] = p.coeff(static_cast<size_t>(i)) * powv;
        }
        ys.push_back(poly_resultant(p, IntPoly(std::move(qc))));
    }
    return interpolate_integer_poly(xs, ys);
}

}  // namespace sunitrec
