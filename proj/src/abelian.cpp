#include "obstrukt/abelian.hpp"

#include "obstrukt/error.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace obstrukt {

// ---------------------------------------------------------------- IntMatrix

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows, size_t cols_if_empty) {
    size_t c = rows.empty() ? cols_if_empty : rows[0].size();
    IntMatrix m(rows.size(), c);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c)
            fail(ErrorKind::InvalidInput, "ragged matrix");
        for (size_t j = 0; j < c; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<std::vector<Int>> IntMatrix::to_rows() const {
    std::vector<std::vector<Int>> out(rows_, std::vector<Int>(cols_));
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            out[i][j] = (*this)(i, j);
    return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    ensure(cols_ == o.rows_, "matrix shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            Int a = (*this)(i, k);
            if (!a)
                continue;
            for (size_t j = 0; j < o.cols_; ++j)
                r(i, j) += a * o(k, j);
        }
    return r;
}

AbElem IntMatrix::operator*(const AbElem& v) const {
    ensure(cols_ == v.size(), "matrix/vector shape mismatch");
    AbElem r(rows_, 0);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            r[i] += (*this)(i, j) * v[j];
    return r;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Int x) { return x == 0; });
}

// ---------------------------------------------------------------- SNF over Z

namespace {

struct Overflow {};

struct Checked {
    Int v = 0;
    Checked() = default;
    Checked(Int x) : v(x) {}
    friend Checked operator+(Checked a, Checked b) {
        Int r;
        if (__builtin_add_overflow(a.v, b.v, &r))
            throw Overflow{};
        return r;
    }
    friend Checked operator-(Checked a, Checked b) {
        Int r;
        if (__builtin_sub_overflow(a.v, b.v, &r))
            throw Overflow{};
        return r;
    }
    friend Checked operator*(Checked a, Checked b) {
        Int r;
        if (__builtin_mul_overflow(a.v, b.v, &r))
            throw Overflow{};
        return r;
    }
    friend Checked operator/(Checked a, Checked b) { return a.v / b.v; }
    friend Checked operator%(Checked a, Checked b) { return a.v % b.v; }
    Checked operator-() const {
        if (v == INT64_MIN)
            throw Overflow{};
        return -v;
    }
    friend bool operator==(Checked a, Checked b) { return a.v == b.v; }
    friend bool operator<(Checked a, Checked b) { return a.v < b.v; }
};

Checked abs_of(Checked a) { return a.v < 0 ? -a : a; }
mpz_class abs_of(const mpz_class& a) { return abs(a); }
bool is_zero_of(const Checked& a) { return a.v == 0; }
bool is_zero_of(const mpz_class& a) { return sgn(a) == 0; }
bool is_neg_of(const Checked& a) { return a.v < 0; }
bool is_neg_of(const mpz_class& a) { return sgn(a) < 0; }
mpz_class quot_of(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
Checked quot_of(Checked a, Checked b) { return a / b; }
mpz_class rem_of(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_tdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}
Checked rem_of(Checked a, Checked b) { return a % b; }

template <class T>
struct Mat {
    size_t r, c;
    std::vector<T> d;
    Mat(size_t rows, size_t cols) : r(rows), c(cols), d(rows * cols, T(0)) {}
    T& operator()(size_t i, size_t j) { return d[i * c + j]; }
};

template <class T>
void row_axpy(Mat<T>& m, size_t dst, size_t src, const T& q) { // row dst -= q row src
    for (size_t j = 0; j < m.c; ++j)
        if (!is_zero_of(m(src, j)))
            m(dst, j) = m(dst, j) - q * m(src, j);
}
template <class T>
void col_axpy(Mat<T>& m, size_t dst, size_t src, const T& q) {
    for (size_t i = 0; i < m.r; ++i)
        if (!is_zero_of(m(i, src)))
            m(i, dst) = m(i, dst) - q * m(i, src);
}
template <class T>
void row_swap(Mat<T>& m, size_t a, size_t b) {
    for (size_t j = 0; j < m.c; ++j)
        std::swap(m(a, j), m(b, j));
}
template <class T>
void col_swap(Mat<T>& m, size_t a, size_t b) {
    for (size_t i = 0; i < m.r; ++i)
        std::swap(m(i, a), m(i, b));
}

template <class T>
T nearest_quot(const T& x, const T& p) {
    T q = quot_of(x, p);
    T r = x - q * p;
    if (abs_of(p) < abs_of(r) + abs_of(r)) {
        if (is_neg_of(r) == is_neg_of(p))
            q = q + T(1);
        else
            q = q - T(1);
    }
    return q;
}

// Each pass moves the smallest nonzero entry of the trailing block to the
// pivot and reduces its row and column with rounded quotients.
template <class T>
void snf_impl(Mat<T>& a, Mat<T>& u, Mat<T>& v) {
    const size_t m = a.r, n = a.c;
    for (size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            bool found = false;
            size_t pi = t, pj = t;
            T best(0);
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < n; ++j)
                    if (!is_zero_of(a(i, j)) && (!found || abs_of(a(i, j)) < best)) {
                        found = true;
                        best = abs_of(a(i, j));
                        pi = i;
                        pj = j;
                    }
            if (!found)
                return;
            row_swap(a, t, pi);
            row_swap(u, t, pi);
            col_swap(a, t, pj);
            col_swap(v, t, pj);
            const T p = a(t, t);
            bool clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                if (is_zero_of(a(i, t)))
                    continue;
                T q = nearest_quot(a(i, t), p);
                row_axpy(a, i, t, q);
                row_axpy(u, i, t, q);
                clean = clean && is_zero_of(a(i, t));
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (is_zero_of(a(t, j)))
                    continue;
                T q = nearest_quot(a(t, j), p);
                col_axpy(a, j, t, q);
                col_axpy(v, j, t, q);
                clean = clean && is_zero_of(a(t, j));
            }
            if (!clean)
                continue;
            bool fixed = false;
            for (size_t i = t + 1; i < m && !fixed; ++i)
                for (size_t j = t + 1; j < n && !fixed; ++j)
                    if (!is_zero_of(rem_of(a(i, j), p))) {
                        row_axpy(a, t, i, T(-1));
                        row_axpy(u, t, i, T(-1));
                        fixed = true;
                    }
            if (!fixed)
                break;
        }
        if (is_neg_of(a(t, t))) {
            for (size_t j = 0; j < n; ++j)
                a(t, j) = -a(t, j);
            for (size_t j = 0; j < m; ++j)
                u(t, j) = -u(t, j);
        }
    }
}

template <class T>
SnfResult run_snf(const IntMatrix& in, auto to_int) {
    const size_t m = in.rows(), n = in.cols();
    Mat<T> a(m, n), u(m, m), v(n, n);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j)
            a(i, j) = T(in(i, j));
    for (size_t i = 0; i < m; ++i)
        u(i, i) = T(1);
    for (size_t i = 0; i < n; ++i)
        v(i, i) = T(1);
    snf_impl(a, u, v);
    SnfResult r{IntMatrix(m, m), IntMatrix(m, n), IntMatrix(n, n)};
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            r.U(i, j) = to_int(u(i, j));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j)
            r.D(i, j) = to_int(a(i, j));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            r.V(i, j) = to_int(v(i, j));
    return r;
}

} // namespace

SnfResult snf(const IntMatrix& m) {
    try {
        return run_snf<Checked>(m, [](const Checked& x) { return x.v; });
    } catch (const Overflow&) {
        return run_snf<mpz_class>(m, [](const mpz_class& x) -> Int {
            if (!x.fits_slong_p())
                fail(ErrorKind::BudgetExceeded, "Smith form transforms exceed 64-bit integers");
            return x.get_si();
        });
    }
}

Int determinant(const IntMatrix& m) {
    ensure(m.rows() == m.cols(), "determinant of non-square matrix");
    const size_t n = m.rows();
    if (n == 0)
        return 1;
    std::vector<mpz_class> a(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            a[i * n + j] = mpz_class(static_cast<long>(m(i, j)));
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k * n + k] == 0) {
            size_t s = k + 1;
            while (s < n && a[s * n + k] == 0)
                ++s;
            if (s == n)
                return 0;
            for (size_t j = 0; j < n; ++j)
                std::swap(a[k * n + j], a[s * n + j]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
        prev = a[k * n + k];
    }
    mpz_class d = a[n * n - 1] * sign;
    if (!d.fits_slong_p())
        fail(ErrorKind::BudgetExceeded, "determinant exceeds 64 bits");
    return d.get_si();
}

// ---------------------------------------------------------------- modular helpers

namespace linalg {

Int mod(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

namespace {

Int mulmod(Int a, Int b, Int m) { return static_cast<Int>((static_cast<__int128>(a) * b) % m); }

// s*a + t*b = g >= 0
Int xgcd(Int a, Int b, Int& s, Int& t) {
    Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        Int q = a / b;
        Int r = a - q * b;
        a = b;
        b = r;
        Int ns = s0 - q * s1;
        s0 = s1;
        s1 = ns;
        Int nt = t0 - q * t1;
        t0 = t1;
        t1 = nt;
    }
    if (a < 0) {
        a = -a;
        s0 = -s0;
        t0 = -t0;
    }
    s = s0;
    t = t0;
    return a;
}

} // namespace

Int inverse_mod(Int a, Int m) {
    if (m == 1)
        return 0;
    Int s, t;
    Int g = xgcd(mod(a, m), m, s, t);
    ensure(g == 1, "inverse of a non-unit");
    return mod(s, m);
}

namespace {

Int ideal_gcd(Int x, Int e) { return x == 0 ? e : std::gcd(x, e); }

// Unit u with u * x ≡ gcd(x, e) mod e.
Int normalizing_unit(Int x, Int e) {
    Int g = std::gcd(x, e);
    Int xp = x / g, ep = e / g;
    Int u0 = ep == 1 ? 1 : inverse_mod(xp, ep);
    for (Int k = 0;; ++k) {
        Int u = u0 + k * ep;
        if (std::gcd(u, e) == 1)
            return mod(u, e);
    }
}

struct ModWork {
    Int e;
    IntMatrix& r;
    IntMatrix& u;
    IntMatrix& uinv;
    IntMatrix& v;
    bool track_inverse;

    // row dst += q row src
    void row_add(size_t dst, size_t src, Int q) {
        q = mod(q, e);
        if (!q)
            return;
        for (size_t j = 0; j < r.cols(); ++j)
            if (r(src, j))
                r(dst, j) = (r(dst, j) + mulmod(q, r(src, j), e)) % e;
        for (size_t j = 0; j < u.cols(); ++j)
            if (u(src, j))
                u(dst, j) = (u(dst, j) + mulmod(q, u(src, j), e)) % e;
        if (track_inverse) // Uinv col src -= q col dst
            for (size_t i = 0; i < uinv.rows(); ++i)
                if (uinv(i, dst))
                    uinv(i, src) = mod(uinv(i, src) - mulmod(q, uinv(i, dst), e), e);
    }
    void col_add(size_t dst, size_t src, Int q) {
        q = mod(q, e);
        if (!q)
            return;
        for (size_t i = 0; i < r.rows(); ++i)
            if (r(i, src))
                r(i, dst) = (r(i, dst) + mulmod(q, r(i, src), e)) % e;
        for (size_t i = 0; i < v.rows(); ++i)
            if (v(i, src))
                v(i, dst) = (v(i, dst) + mulmod(q, v(i, src), e)) % e;
    }
    void row_swap(size_t a, size_t b) {
        if (a == b)
            return;
        for (size_t j = 0; j < r.cols(); ++j)
            std::swap(r(a, j), r(b, j));
        for (size_t j = 0; j < u.cols(); ++j)
            std::swap(u(a, j), u(b, j));
        if (track_inverse)
            for (size_t i = 0; i < uinv.rows(); ++i)
                std::swap(uinv(i, a), uinv(i, b));
    }
    void col_swap(size_t a, size_t b) {
        if (a == b)
            return;
        for (size_t i = 0; i < r.rows(); ++i)
            std::swap(r(i, a), r(i, b));
        for (size_t i = 0; i < v.rows(); ++i)
            std::swap(v(i, a), v(i, b));
    }
    void row_scale(size_t t, Int unit) {
        for (size_t j = 0; j < r.cols(); ++j)
            r(t, j) = mulmod(r(t, j), unit, e);
        for (size_t j = 0; j < u.cols(); ++j)
            u(t, j) = mulmod(u(t, j), unit, e);
        if (track_inverse) {
            Int inv = inverse_mod(unit, e);
            for (size_t i = 0; i < uinv.rows(); ++i)
                uinv(i, t) = mulmod(uinv(i, t), inv, e);
        }
    }
    // rows (t, i) <- [[s, c], [-b', p']] (t, i), determinant 1
    void row_combine(size_t t, size_t i, Int s, Int c, Int b, Int p) {
        s = mod(s, e);
        c = mod(c, e);
        b = mod(b, e);
        p = mod(p, e);
        for (size_t j = 0; j < r.cols(); ++j) {
            Int x = r(t, j), y = r(i, j);
            r(t, j) = (mulmod(s, x, e) + mulmod(c, y, e)) % e;
            r(i, j) = mod(mulmod(p, y, e) - mulmod(b, x, e), e);
        }
        for (size_t j = 0; j < u.cols(); ++j) {
            Int x = u(t, j), y = u(i, j);
            u(t, j) = (mulmod(s, x, e) + mulmod(c, y, e)) % e;
            u(i, j) = mod(mulmod(p, y, e) - mulmod(b, x, e), e);
        }
        if (track_inverse) // inverse [[p', -c], [b', s]] on columns
            for (size_t k = 0; k < uinv.rows(); ++k) {
                Int x = uinv(k, t), y = uinv(k, i);
                uinv(k, t) = (mulmod(x, p, e) + mulmod(y, b, e)) % e;
                uinv(k, i) = mod(mulmod(y, s, e) - mulmod(x, c, e), e);
            }
    }
    void col_combine(size_t t, size_t j, Int s, Int c, Int b, Int p) {
        s = mod(s, e);
        c = mod(c, e);
        b = mod(b, e);
        p = mod(p, e);
        for (size_t i = 0; i < r.rows(); ++i) {
            Int x = r(i, t), y = r(i, j);
            r(i, t) = (mulmod(s, x, e) + mulmod(c, y, e)) % e;
            r(i, j) = mod(mulmod(p, y, e) - mulmod(b, x, e), e);
        }
        for (size_t i = 0; i < v.rows(); ++i) {
            Int x = v(i, t), y = v(i, j);
            v(i, t) = (mulmod(s, x, e) + mulmod(c, y, e)) % e;
            v(i, j) = mod(mulmod(p, y, e) - mulmod(b, x, e), e);
        }
    }
    void normalize_pivot(size_t t) {
        Int x = r(t, t);
        if (x == 0)
            return;
        Int g = std::gcd(x, e);
        if (x != g)
            row_scale(t, normalizing_unit(x, e));
    }
};

ModSnf snf_mod_impl(IntMatrix r, Int e, bool track_inverse) {
    ensure(e >= 1, "modulus must be positive");
    const size_t m = r.rows(), n = r.cols();
    ModSnf out;
    out.e = e;
    out.rows = m;
    out.cols = n;
    out.U = IntMatrix::identity(m);
    out.Uinv = track_inverse ? IntMatrix::identity(m) : IntMatrix();
    out.V = IntMatrix::identity(n);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j)
            r(i, j) = mod(r(i, j), e);
    if (e == 1) {
        out.U = IntMatrix(m, m);
        out.V = IntMatrix(n, n);
        out.diag.assign(std::min(m, n), 0);
        return out;
    }
    ModWork w{e, r, out.U, out.Uinv, out.V, track_inverse};
    const size_t lim = std::min(m, n);
    out.diag.assign(lim, 0);
    for (size_t t = 0; t < lim; ++t) {
        bool found = false;
        size_t pi = t, pj = t;
        Int best = e + 1;
        for (size_t i = t; i < m && best > 1; ++i)
            for (size_t j = t; j < n; ++j) {
                Int x = r(i, j);
                if (!x)
                    continue;
                Int g = std::gcd(x, e);
                if (g < best) {
                    best = g;
                    pi = i;
                    pj = j;
                    found = true;
                    if (g == 1)
                        break;
                }
            }
        if (!found)
            break;
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        w.normalize_pivot(t);
        for (;;) {
            bool dirty = false;
            for (size_t i = t + 1; i < m; ++i) {
                Int x = r(i, t);
                if (!x)
                    continue;
                Int p = r(t, t);
                if (x % p == 0) {
                    w.row_add(i, t, -(x / p));
                } else {
                    Int s, c;
                    Int h = xgcd(p, x, s, c);
                    w.row_combine(t, i, s, c, x / h, p / h);
                    w.normalize_pivot(t);
                    dirty = true;
                }
            }
            for (size_t j = t + 1; j < n; ++j) {
                Int x = r(t, j);
                if (!x)
                    continue;
                Int p = r(t, t);
                if (x % p == 0) {
                    w.col_add(j, t, -(x / p));
                } else {
                    Int s, c;
                    Int h = xgcd(p, x, s, c);
                    w.col_combine(t, j, s, c, x / h, p / h);
                    w.normalize_pivot(t);
                    dirty = true;
                }
            }
            if (dirty)
                continue;
            Int p = r(t, t);
            bool fixed = false;
            for (size_t i = t + 1; i < m && !fixed; ++i)
                for (size_t j = t + 1; j < n; ++j)
                    if (r(i, j) % p != 0) {
                        w.row_add(t, i, 1);
                        fixed = true;
                        break;
                    }
            if (!fixed)
                break;
        }
        out.diag[t] = r(t, t);
    }
    return out;
}

std::vector<AbElem> kernel_from_snf(const ModSnf& s) {
    std::vector<AbElem> gens;
    const Int e = s.e;
    for (size_t i = 0; i < s.cols; ++i) {
        Int scale = 1;
        if (i < s.diag.size() && s.diag[i] != 0)
            scale = e / s.diag[i];
        if (scale % e == 0)
            continue;
        AbElem g(s.cols);
        bool nz = false;
        for (size_t k = 0; k < s.cols; ++k) {
            g[k] = mulmod(s.V(k, i), scale, e);
            nz |= g[k] != 0;
        }
        if (nz)
            gens.push_back(std::move(g));
    }
    return gens;
}

Int lcm_of(const std::vector<Int>& moduli) {
    Int e = 1;
    for (Int m : moduli)
        e = std::lcm(e, m);
    return e;
}

} // namespace

ModSnf snf_mod(IntMatrix r, Int e) { return snf_mod_impl(std::move(r), e, true); }

std::optional<AbElem> solve(const ModSnf& s, const AbElem& y) {
    ensure(y.size() == s.rows, "solve: right-hand side has wrong length");
    const Int e = s.e;
    AbElem w(s.rows, 0);
    for (size_t i = 0; i < s.rows; ++i) {
        __int128 acc = 0;
        for (size_t j = 0; j < s.rows; ++j)
            if (s.U(i, j))
                acc += static_cast<__int128>(s.U(i, j)) * mod(y[j], e);
        w[i] = static_cast<Int>(acc % e);
    }
    AbElem z(s.cols, 0);
    for (size_t i = 0; i < s.rows; ++i) {
        Int d = i < s.diag.size() ? s.diag[i] : 0;
        if (d == 0) {
            if (w[i] != 0)
                return std::nullopt;
            continue;
        }
        if (w[i] % d != 0)
            return std::nullopt;
        z[i] = w[i] / d;
    }
    AbElem x(s.cols, 0);
    for (size_t i = 0; i < s.cols; ++i) {
        __int128 acc = 0;
        for (size_t j = 0; j < s.cols; ++j)
            if (z[j] && s.V(i, j))
                acc += static_cast<__int128>(s.V(i, j)) * z[j];
        x[i] = static_cast<Int>(acc % e);
    }
    return x;
}

std::vector<AbElem> kernel_generators(const IntMatrix& a, const std::vector<Int>& row_moduli, Int e) {
    const size_t m = a.rows(), n = a.cols();
    ensure(row_moduli.size() == m, "row moduli length");
    IntMatrix r(m, n + m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j)
            r(i, j) = a(i, j);
        r(i, n + i) = row_moduli[i];
    }
    auto s = snf_mod_impl(std::move(r), e, false);
    std::vector<AbElem> out;
    for (auto& g : kernel_from_snf(s)) {
        g.resize(n);
        if (std::any_of(g.begin(), g.end(), [](Int x) { return x != 0; }))
            out.push_back(std::move(g));
    }
    return out;
}

QuotientData quotient_by(const std::vector<Int>& moduli, const std::vector<AbElem>& relations) {
    const size_t m = moduli.size(), k = relations.size();
    const Int e = lcm_of(moduli);
    IntMatrix r(m, k + m);
    for (size_t j = 0; j < k; ++j) {
        ensure(relations[j].size() == m, "relation has wrong length");
        for (size_t i = 0; i < m; ++i)
            r(i, j) = relations[j][i];
    }
    for (size_t i = 0; i < m; ++i)
        r(i, k + i) = moduli[i];
    auto s = snf_mod_impl(std::move(r), e, true);
    std::vector<Int> factors;
    std::vector<size_t> keep;
    for (size_t i = 0; i < m; ++i) {
        Int q = ideal_gcd(i < s.diag.size() ? s.diag[i] : 0, e);
        if (q > 1) {
            factors.push_back(q);
            keep.push_back(i);
        }
    }
    QuotientData out{FinAbGroup(factors), IntMatrix(keep.size(), m), IntMatrix(m, keep.size())};
    for (size_t a = 0; a < keep.size(); ++a) {
        for (size_t j = 0; j < m; ++j)
            out.projection(a, j) = mod(s.U(keep[a], j), factors[a]);
        for (size_t i = 0; i < m; ++i)
            out.lift(i, a) = mod(s.Uinv(i, keep[a]), moduli[i]);
    }
    return out;
}

QuotientData canonical_form(const std::vector<Int>& moduli) { return quotient_by(moduli, {}); }

SubgroupSpan::SubgroupSpan(std::vector<Int> moduli, std::vector<AbElem> gens)
    : moduli_(std::move(moduli)), gens_(std::move(gens)) {
    const size_t m = moduli_.size(), k = gens_.size();
    e_ = lcm_of(moduli_);
    IntMatrix r(m, k + m);
    for (size_t j = 0; j < k; ++j) {
        ensure(gens_[j].size() == m, "generator has wrong length");
        for (size_t i = 0; i < m; ++i)
            r(i, j) = gens_[j][i];
    }
    for (size_t i = 0; i < m; ++i)
        r(i, k + i) = moduli_[i];
    snf_ = snf_mod_impl(std::move(r), e_, false);
    std::vector<AbElem> rel;
    for (auto& g : kernel_from_snf(snf_)) {
        g.resize(k);
        if (std::any_of(g.begin(), g.end(), [](Int x) { return x != 0; }))
            rel.push_back(std::move(g));
    }
    coeff_quotient_ = quotient_by(std::vector<Int>(k, e_), rel);
    const size_t rank = coeff_quotient_.group.rank();
    inclusion_ = IntMatrix(m, rank);
    for (size_t a = 0; a < rank; ++a)
        for (size_t i = 0; i < m; ++i) {
            __int128 acc = 0;
            for (size_t j = 0; j < k; ++j)
                acc += static_cast<__int128>(gens_[j][i]) * coeff_quotient_.lift(j, a);
            inclusion_(i, a) = mod(static_cast<Int>(acc % moduli_[i]), moduli_[i]);
        }
}

AbElem SubgroupSpan::include(const AbElem& h) const {
    AbElem x(moduli_.size(), 0);
    for (size_t i = 0; i < moduli_.size(); ++i) {
        __int128 acc = 0;
        for (size_t a = 0; a < h.size(); ++a)
            acc += static_cast<__int128>(inclusion_(i, a)) * h[a];
        x[i] = mod(static_cast<Int>(acc % moduli_[i]), moduli_[i]);
    }
    return x;
}

std::optional<AbElem> SubgroupSpan::combination(const AbElem& x) const {
    auto z = solve(snf_, x);
    if (!z)
        return std::nullopt;
    z->resize(gens_.size());
    return z;
}

std::optional<AbElem> SubgroupSpan::coordinates(const AbElem& x) const {
    auto c = combination(x);
    if (!c)
        return std::nullopt;
    const auto& q = coeff_quotient_;
    AbElem out(q.group.rank(), 0);
    for (size_t a = 0; a < out.size(); ++a) {
        __int128 acc = 0;
        for (size_t j = 0; j < c->size(); ++j)
            acc += static_cast<__int128>(q.projection(a, j)) * (*c)[j];
        out[a] = mod(static_cast<Int>(acc % q.group.factors()[a]), q.group.factors()[a]);
    }
    return out;
}

} // namespace linalg

// ---------------------------------------------------------------- FinAbGroup

FinAbGroup::FinAbGroup(std::vector<Int> factors) : factors_(std::move(factors)) {
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2)
            fail(ErrorKind::InvalidInput, "invariant factors must be >= 2");
        if (i && factors_[i] % factors_[i - 1] != 0)
            fail(ErrorKind::InvalidInput, "invariant factors must form a divisibility chain");
    }
}

FinAbGroup FinAbGroup::cyclic(Int n) {
    if (n < 1)
        fail(ErrorKind::InvalidInput, "cyclic order must be positive");
    return n == 1 ? FinAbGroup() : FinAbGroup({n});
}

Int FinAbGroup::order() const {
    Int o = 1;
    for (Int d : factors_)
        if (__builtin_mul_overflow(o, d, &o))
            fail(ErrorKind::BudgetExceeded, "group order exceeds 64 bits");
    return o;
}

Int FinAbGroup::elementary_prime() const {
    if (factors_.empty())
        return 0;
    Int p = factors_.front();
    if (factors_.back() != p)
        return 0;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return 0;
    return p;
}

AbElem FinAbGroup::reduce(AbElem x) const {
    ensure(x.size() == rank(), "element has wrong rank");
    for (size_t i = 0; i < rank(); ++i)
        x[i] = linalg::mod(x[i], factors_[i]);
    return x;
}

AbElem FinAbGroup::add(const AbElem& a, const AbElem& b) const {
    AbElem r(rank());
    for (size_t i = 0; i < rank(); ++i)
        r[i] = linalg::mod(a[i] + b[i], factors_[i]);
    return r;
}

AbElem FinAbGroup::sub(const AbElem& a, const AbElem& b) const {
    AbElem r(rank());
    for (size_t i = 0; i < rank(); ++i)
        r[i] = linalg::mod(a[i] - b[i], factors_[i]);
    return r;
}

AbElem FinAbGroup::neg(const AbElem& a) const { return sub(zero(), a); }

AbElem FinAbGroup::scale(Int k, const AbElem& a) const {
    AbElem r(rank());
    for (size_t i = 0; i < rank(); ++i)
        r[i] = linalg::mod(static_cast<Int>((static_cast<__int128>(k) * a[i]) % factors_[i]), factors_[i]);
    return r;
}

bool FinAbGroup::is_zero(const AbElem& a) const {
    for (size_t i = 0; i < rank(); ++i)
        if (linalg::mod(a[i], factors_[i]) != 0)
            return false;
    return true;
}

AbElem FinAbGroup::basis(size_t i) const {
    AbElem r = zero();
    r[i] = 1;
    return r;
}

Int FinAbGroup::index(const AbElem& x) const {
    Int idx = 0;
    for (size_t i = 0; i < rank(); ++i)
        idx = idx * factors_[i] + linalg::mod(x[i], factors_[i]);
    return idx;
}

AbElem FinAbGroup::element(Int idx) const {
    AbElem x(rank());
    for (size_t i = rank(); i-- > 0;) {
        x[i] = idx % factors_[i];
        idx /= factors_[i];
    }
    return x;
}

std::vector<AbElem> FinAbGroup::elements() const {
    Int n = order();
    if (n > 10'000'000)
        fail(ErrorKind::BudgetExceeded, "too many elements to enumerate");
    std::vector<AbElem> out;
    out.reserve(static_cast<size_t>(n));
    for (Int i = 0; i < n; ++i)
        out.push_back(element(i));
    return out;
}

Int FinAbGroup::element_order(const AbElem& x) const {
    Int o = 1;
    for (size_t i = 0; i < rank(); ++i) {
        Int v = linalg::mod(x[i], factors_[i]);
        o = std::lcm(o, factors_[i] / std::gcd(v, factors_[i]));
    }
    return o;
}

std::string FinAbGroup::to_string() const {
    if (factors_.empty())
        return "0";
    std::ostringstream os;
    for (size_t i = 0; i < rank(); ++i)
        os << (i ? " x " : "") << "Z/" << factors_[i];
    return os.str();
}

// ---------------------------------------------------------------- AbMap

AbMap::AbMap(FinAbGroup source, FinAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank())
        fail(ErrorKind::InvalidInput, "map matrix has shape " + std::to_string(matrix_.rows()) + "x" +
                                          std::to_string(matrix_.cols()) + ", expected " +
                                          std::to_string(target_.rank()) + "x" + std::to_string(source_.rank()));
    for (size_t i = 0; i < target_.rank(); ++i)
        for (size_t j = 0; j < source_.rank(); ++j) {
            Int t = target_.factors()[i];
            matrix_(i, j) = linalg::mod(matrix_(i, j), t);
            if (static_cast<Int>((static_cast<__int128>(matrix_(i, j)) * source_.factors()[j]) % t) != 0)
                fail(ErrorKind::InvalidInput, "map is not well defined on factor " + std::to_string(j));
        }
}

AbMap AbMap::identity(const FinAbGroup& g) { return AbMap(g, g, IntMatrix::identity(g.rank())); }

AbMap AbMap::zero(const FinAbGroup& source, const FinAbGroup& target) {
    return AbMap(source, target, IntMatrix(target.rank(), source.rank()));
}

AbElem AbMap::operator()(const AbElem& x) const {
    ensure(x.size() == source_.rank(), "argument has wrong rank");
    AbElem y(target_.rank());
    for (size_t i = 0; i < target_.rank(); ++i) {
        Int t = target_.factors()[i];
        __int128 acc = 0;
        for (size_t j = 0; j < source_.rank(); ++j)
            acc += static_cast<__int128>(matrix_(i, j)) * x[j];
        y[i] = linalg::mod(static_cast<Int>(acc % t), t);
    }
    return y;
}

bool AbMap::is_injective() const { return kernel(*this).group.is_trivial(); }

AbMap compose(const AbMap& after, const AbMap& before) {
    if (!(before.target() == after.source()))
        fail(ErrorKind::TypeMismatch, "cannot compose additive maps");
    return AbMap(before.source(), after.target(), after.matrix() * before.matrix());
}

namespace {

Int common_modulus(const FinAbGroup& a, const FinAbGroup& b) { return std::lcm(a.exponent(), b.exponent()); }

} // namespace

SubobjectResult kernel(const AbMap& f) {
    const auto& s = f.source();
    auto gens = linalg::kernel_generators(f.matrix(), f.target().factors(), common_modulus(s, f.target()));
    for (auto& g : gens)
        g = s.reduce(g);
    linalg::SubgroupSpan span(s.factors(), gens);
    return {span.group(), AbMap(span.group(), s, span.inclusion())};
}

SubobjectResult image(const AbMap& f) {
    std::vector<AbElem> cols;
    for (size_t j = 0; j < f.source().rank(); ++j)
        cols.push_back(f(f.source().basis(j)));
    linalg::SubgroupSpan span(f.target().factors(), cols);
    return {span.group(), AbMap(span.group(), f.target(), span.inclusion())};
}

SubobjectResult cokernel(const AbMap& f) {
    std::vector<AbElem> cols;
    for (size_t j = 0; j < f.source().rank(); ++j)
        cols.push_back(f(f.source().basis(j)));
    auto q = linalg::quotient_by(f.target().factors(), cols);
    return {q.group, AbMap(f.target(), q.group, q.projection)};
}

std::optional<AbElem> preimage(const AbMap& f, const AbElem& y) {
    const auto& t = f.target();
    const size_t m = t.rank(), n = f.source().rank();
    IntMatrix r(m, n + m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j)
            r(i, j) = f.matrix()(i, j);
        r(i, n + i) = t.factors()[i];
    }
    auto s = linalg::snf_mod(std::move(r), common_modulus(f.source(), t));
    auto z = linalg::solve(s, t.reduce(y));
    if (!z)
        return std::nullopt;
    z->resize(n);
    return f.source().reduce(*z);
}

// ---------------------------------------------------------------- Hom and dual

HomGroup::HomGroup(FinAbGroup source, FinAbGroup target) : source_(std::move(source)), target_(std::move(target)) {
    const size_t rm = source_.rank(), ra = target_.rank();
    raw_moduli_.resize(rm * ra);
    for (size_t i = 0; i < rm; ++i)
        for (size_t j = 0; j < ra; ++j)
            raw_moduli_[i * ra + j] = std::gcd(source_.factors()[i], target_.factors()[j]);
    auto q = linalg::canonical_form(raw_moduli_);
    group_ = q.group;
    to_raw_ = q.lift;
    from_raw_ = q.projection;
}

AbMap HomGroup::to_map(const AbElem& h) const {
    const size_t rm = source_.rank(), ra = target_.rank();
    IntMatrix f(ra, rm);
    for (size_t i = 0; i < rm; ++i)
        for (size_t j = 0; j < ra; ++j) {
            size_t k = i * ra + j;
            Int g = raw_moduli_[k];
            __int128 acc = 0;
            for (size_t a = 0; a < group_.rank(); ++a)
                acc += static_cast<__int128>(to_raw_(k, a)) * h[a];
            Int raw = linalg::mod(static_cast<Int>(acc % g), g);
            f(j, i) = raw * (target_.factors()[j] / g);
        }
    return AbMap(source_, target_, std::move(f));
}

AbElem HomGroup::from_matrix(const IntMatrix& m) const {
    const size_t rm = source_.rank(), ra = target_.rank();
    AbElem raw(rm * ra);
    for (size_t i = 0; i < rm; ++i)
        for (size_t j = 0; j < ra; ++j) {
            size_t k = i * ra + j;
            Int step = target_.factors()[j] / raw_moduli_[k];
            Int v = linalg::mod(m(j, i), target_.factors()[j]);
            if (v % step != 0)
                fail(ErrorKind::InvalidInput, "matrix is not a well-defined map");
            raw[k] = v / step;
        }
    AbElem h(group_.rank());
    for (size_t a = 0; a < group_.rank(); ++a) {
        __int128 acc = 0;
        for (size_t k = 0; k < raw.size(); ++k)
            acc += static_cast<__int128>(from_raw_(a, k)) * raw[k];
        h[a] = linalg::mod(static_cast<Int>(acc % group_.factors()[a]), group_.factors()[a]);
    }
    return h;
}

AbElem HomGroup::from_map(const AbMap& f) const {
    if (!(f.source() == source_) || !(f.target() == target_))
        fail(ErrorKind::TypeMismatch, "map does not belong to this Hom group");
    return from_matrix(f.matrix());
}

HomGroup hom_group(const FinAbGroup& m, const FinAbGroup& a) { return HomGroup(m, a); }

Dual::Dual(FinAbGroup m) : exponent_(m.exponent()), hom_(m, FinAbGroup::cyclic(m.exponent())) {}

Int Dual::evaluate(const AbElem& x, const AbElem& functional) const {
    if (exponent_ == 1)
        return 0;
    return hom_.to_map(functional)(x)[0];
}

Dual dual(const FinAbGroup& m) { return Dual(m); }

// ---------------------------------------------------------------- bridges to groups

FiniteGroup additive_group(const FinAbGroup& a, std::string label) {
    Int n = a.order();
    if (n > FiniteGroup::kMaxOrder)
        fail(ErrorKind::UnsupportedParameter, "additive group too large");
    auto elems = a.elements();
    std::vector<uint16_t> flat(static_cast<size_t>(n * n));
    for (Int x = 0; x < n; ++x)
        for (Int y = 0; y < n; ++y)
            flat[static_cast<size_t>(x * n + y)] = static_cast<uint16_t>(a.index(a.add(elems[x], elems[y])));
    return FiniteGroup::from_flat_table(static_cast<int>(n), std::move(flat),
                                        label.empty() ? a.to_string() : std::move(label));
}

AbelianStructure abelian_structure(const Subgroup& h) {
    if (!h.is_abelian())
        fail(ErrorKind::KernelNotAbelian, "subgroup is not abelian");
    const auto& g = h.parent();
    auto [sub, incl] = h.as_group();
    std::vector<Elem> gens;
    for (Elem s : sub.generators())
        gens.push_back(incl(s));
    const size_t k = gens.size();
    const Int e = sub.exponent();
    // coefficient vectors along a BFS tree; every non-tree edge is a relation
    std::vector<AbElem> coef(g.order());
    std::vector<bool> seen(g.order(), false);
    std::vector<Elem> queue{g.identity()};
    coef[g.identity()] = AbElem(k, 0);
    seen[g.identity()] = true;
    std::vector<AbElem> relations;
    for (size_t i = 0; i < queue.size(); ++i) {
        Elem x = queue[i];
        for (size_t j = 0; j < k; ++j) {
            Elem y = g.mul(x, gens[j]);
            AbElem c = coef[x];
            c[j] += 1;
            if (!seen[y]) {
                seen[y] = true;
                coef[y] = c;
                queue.push_back(y);
            } else {
                AbElem rel(k);
                bool nz = false;
                for (size_t a = 0; a < k; ++a) {
                    rel[a] = linalg::mod(c[a] - coef[y][a], e);
                    nz |= rel[a] != 0;
                }
                if (nz)
                    relations.push_back(std::move(rel));
            }
        }
    }
    auto q = linalg::quotient_by(std::vector<Int>(k, e), relations);
    auto add = additive_group(q.group);
    std::vector<Elem> img(add.order());
    for (int idx = 0; idx < add.order(); ++idx) {
        AbElem v = q.group.element(idx);
        Elem x = g.identity();
        for (size_t j = 0; j < k; ++j) {
            __int128 acc = 0;
            for (size_t a = 0; a < v.size(); ++a)
                acc += static_cast<__int128>(q.lift(j, a)) * v[a];
            x = g.mul(x, g.pow(gens[j], static_cast<Int>(acc % e)));
        }
        img[idx] = x;
    }
    GroupHom emb(add, g, std::move(img));
    ensure(emb.is_injective() && add.order() == h.order(), "abelian structure is not a bijection");
    check_homomorphism(emb);
    return {q.group, emb};
}

} // namespace obstrukt
