#include "obstrukt/cochain.hpp"

#include "obstrukt/error.hpp"

#include <limits>
#include <string>

namespace obstrukt {

size_t cochain_tuple_count(const FiniteGroup& g, int degree) {
    size_t base = static_cast<size_t>(g.order() - 1), count = 1;
    for (int i = 0; i < degree; ++i)
        if (__builtin_mul_overflow(count, base, &count))
            return std::numeric_limits<size_t>::max();
    return count;
}

TupleIndexer::TupleIndexer(const FiniteGroup& g, int degree)
    : degree_(degree), identity_(g.identity()), base_(static_cast<size_t>(g.order() - 1)) {
    if (degree < 0)
        fail(ErrorKind::InvalidInput, "negative cochain degree");
    count_ = cochain_tuple_count(g, degree);
    if (count_ == std::numeric_limits<size_t>::max())
        fail(ErrorKind::BudgetExceeded, "cochain space too large to index");
}

size_t TupleIndexer::index(std::span<const Elem> t) const {
    size_t idx = 0;
    for (Elem g : t)
        idx = idx * base_ + rank_of(g);
    return idx;
}

void TupleIndexer::tuple(size_t idx, std::span<Elem> out) const {
    for (size_t i = out.size(); i-- > 0;) {
        out[i] = elem_of(idx % base_);
        idx /= base_;
    }
}

// ---------------------------------------------------------------- Cochain

Cochain::Cochain(GModule m, int degree)
    : module_(std::move(m)), degree_(degree), indexer_(module_.group(), degree), rank_(module_.coeff().rank()) {
    size_t n;
    if (__builtin_mul_overflow(indexer_.count(), rank_, &n))
        fail(ErrorKind::BudgetExceeded, "cochain space too large");
    data_.assign(n, 0);
}

Cochain Cochain::from_data(GModule m, int degree, std::vector<Int> data) {
    Cochain c(std::move(m), degree);
    if (data.size() != c.data_.size())
        fail(ErrorKind::InvalidInput, "cochain data has wrong length");
    const auto& f = c.module_.coeff().factors();
    for (size_t i = 0; i < data.size(); ++i)
        data[i] = linalg::mod(data[i], f[i % c.rank_]);
    c.data_ = std::move(data);
    return c;
}

Cochain Cochain::from_function(GModule m, int degree, const std::function<AbElem(std::span<const Elem>)>& f) {
    Cochain c(std::move(m), degree);
    std::vector<Elem> t(degree);
    for (size_t k = 0; k < c.tuple_count(); ++k) {
        c.indexer_.tuple(k, t);
        c.set_at(k, f(t));
    }
    return c;
}

AbElem Cochain::value(std::span<const Elem> t) const {
    if (t.size() != static_cast<size_t>(degree_))
        fail(ErrorKind::InvalidInput, "tuple length does not match cochain degree");
    const Elem id = module_.group().identity();
    for (Elem g : t) {
        if (g < 0 || g >= module_.group().order())
            fail(ErrorKind::InvalidInput, "tuple entry is not a group element");
        if (g == id)
            return module_.coeff().zero();
    }
    return value_at(indexer_.index(t));
}

AbElem Cochain::value_at(size_t tuple_index) const {
    const Int* p = raw_at(tuple_index);
    return AbElem(p, p + rank_);
}

void Cochain::set(std::span<const Elem> t, const AbElem& v) {
    if (t.size() != static_cast<size_t>(degree_))
        fail(ErrorKind::InvalidInput, "tuple length does not match cochain degree");
    for (Elem g : t)
        if (g == module_.group().identity())
            fail(ErrorKind::InvalidInput, "normalized cochains take no values on tuples containing the identity");
    set_at(indexer_.index(t), v);
}

void Cochain::set_at(size_t tuple_index, const AbElem& v) {
    if (v.size() != rank_)
        fail(ErrorKind::InvalidInput, "cochain value has wrong rank");
    const auto& f = module_.coeff().factors();
    for (size_t i = 0; i < rank_; ++i)
        data_[tuple_index * rank_ + i] = linalg::mod(v[i], f[i]);
}

bool Cochain::is_zero() const {
    for (Int x : data_)
        if (x)
            return false;
    return true;
}

void Cochain::check_compatible(const Cochain& o) const {
    if (degree_ != o.degree_ || !module_.same_as(o.module_))
        fail(ErrorKind::TypeMismatch, "cochains live in different complexes");
}

Cochain Cochain::operator+(const Cochain& o) const {
    check_compatible(o);
    Cochain r = *this;
    const auto& f = module_.coeff().factors();
    for (size_t i = 0; i < data_.size(); ++i) {
        Int s = data_[i] + o.data_[i];
        Int d = f[i % rank_];
        r.data_[i] = s >= d ? s - d : s;
    }
    return r;
}

Cochain Cochain::operator-() const {
    Cochain r = *this;
    const auto& f = module_.coeff().factors();
    for (size_t i = 0; i < data_.size(); ++i)
        r.data_[i] = data_[i] ? f[i % rank_] - data_[i] : 0;
    return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + (-o); }

Cochain Cochain::scaled(Int k) const {
    Cochain r = *this;
    const auto& f = module_.coeff().factors();
    for (size_t i = 0; i < data_.size(); ++i) {
        Int d = f[i % rank_];
        r.data_[i] = linalg::mod(linalg::mod(k, d) * data_[i], d);
    }
    return r;
}

bool operator==(const Cochain& a, const Cochain& b) {
    return a.degree_ == b.degree_ && a.module_.same_as(b.module_) && a.data_ == b.data_;
}

// ---------------------------------------------------------------- differential

Cochain differential(const Cochain& c) {
    const GModule& m = c.module();
    const FiniteGroup& g = m.group();
    const int n = c.degree();
    Cochain out(m, n + 1);
    const size_t r = m.coeff().rank();
    if (r == 0 || out.tuple_count() == 0)
        return out;
    const auto& f = m.coeff().factors();
    const TupleIndexer& in_idx = c.indexer();
    const TupleIndexer& out_idx = out.indexer();
    const Elem id = g.identity();
    const size_t base = out_idx.base();
    std::vector<Elem> t(n + 1), merged(n);
    std::vector<Int> acc(r);
    std::vector<Int> data(out.coordinate_count());
    const size_t in_count = in_idx.count();
    for (size_t k = 0; k < out.tuple_count(); ++k) {
        out_idx.tuple(k, t);
        std::fill(acc.begin(), acc.end(), 0);
        // g1 * c(g2..)
        const Int* v0 = c.raw_at(k % in_count);
        if (m.is_trivial()) {
            for (size_t i = 0; i < r; ++i)
                acc[i] += v0[i];
        } else {
            const IntMatrix& a = m.action(t[0]);
            for (size_t i = 0; i < r; ++i)
                for (size_t j = 0; j < r; ++j)
                    acc[i] += a(i, j) * v0[j];
        }
        // alternating face terms
        for (int i = 1; i <= n; ++i) {
            Elem prod = g.mul(t[i - 1], t[i]);
            if (prod == id)
                continue;
            size_t idx = 0;
            for (int p = 0; p < n + 1; ++p) {
                if (p == i)
                    continue;
                Elem e = p == i - 1 ? prod : t[p];
                idx = idx * base + in_idx.rank_of(e);
            }
            const Int* v = c.raw_at(idx);
            for (size_t q = 0; q < r; ++q)
                acc[q] += (i % 2 ? -v[q] : v[q]);
        }
        const Int* vl = c.raw_at(k / base);
        for (size_t q = 0; q < r; ++q)
            acc[q] += ((n + 1) % 2 ? -vl[q] : vl[q]);
        for (size_t q = 0; q < r; ++q)
            data[k * r + q] = linalg::mod(acc[q], f[q]);
    }
    return Cochain::from_data(m, n + 1, std::move(data));
}

// ---------------------------------------------------------------- sparse operator

DifferentialOperator::DifferentialOperator(GModule m, int degree)
    : module_(std::move(m)), degree_(degree), in_(module_.group(), degree), out_(module_.group(), degree + 1),
      rank_(module_.coeff().rank()) {}

void DifferentialOperator::row(size_t row, std::vector<std::pair<size_t, Int>>& out) const {
    out.clear();
    const FiniteGroup& g = module_.group();
    const int n = degree_;
    const size_t r = rank_;
    const size_t k = row / r, comp = row % r;
    std::vector<Elem> t(n + 1);
    out_.tuple(k, t);
    const size_t base = out_.base();
    const size_t front = k % in_.count();
    const IntMatrix& a = module_.action(t[0]);
    for (size_t j = 0; j < r; ++j)
        if (Int v = a(comp, j))
            out.emplace_back(front * r + j, v);
    for (int i = 1; i <= n; ++i) {
        Elem prod = g.mul(t[i - 1], t[i]);
        if (prod == g.identity())
            continue;
        size_t idx = 0;
        for (int p = 0; p < n + 1; ++p) {
            if (p == i)
                continue;
            idx = idx * base + in_.rank_of(p == i - 1 ? prod : t[p]);
        }
        out.emplace_back(idx * r + comp, i % 2 ? -1 : 1);
    }
    out.emplace_back((k / base) * r + comp, (n + 1) % 2 ? -1 : 1);
}

void DifferentialOperator::column(size_t col, std::vector<std::pair<size_t, Int>>& out) const {
    out.clear();
    const FiniteGroup& g = module_.group();
    const int n = degree_;
    const size_t r = rank_;
    const size_t k = col / r, comp = col % r;
    std::vector<Elem> h(n), t(n + 1);
    in_.tuple(k, h);
    const Elem id = g.identity();
    for (Elem x = 0; x < g.order(); ++x) {
        if (x == id)
            continue;
        // front term: (x, h)
        t[0] = x;
        std::copy(h.begin(), h.end(), t.begin() + 1);
        size_t idx = out_.index(t);
        const IntMatrix& a = module_.action(x);
        for (size_t i = 0; i < r; ++i)
            if (Int v = a(i, comp))
                out.emplace_back(idx * r + i, v);
        // faces: (h1..h_{i-1}, x, x^-1 h_i, ..)
        for (int i = 1; i <= n; ++i) {
            Elem y = g.mul(g.inv(x), h[i - 1]);
            if (y == id)
                continue;
            for (int p = 0, q = 0; p < n + 1; ++p) {
                if (p == i - 1) {
                    t[p] = x;
                } else if (p == i) {
                    t[p] = y;
                    ++q;
                } else {
                    t[p] = h[q++];
                }
            }
            out.emplace_back(out_.index(t) * r + comp, i % 2 ? -1 : 1);
        }
        // back term: (h, x)
        std::copy(h.begin(), h.end(), t.begin());
        t[n] = x;
        out.emplace_back(out_.index(t) * r + comp, (n + 1) % 2 ? -1 : 1);
    }
}

// ---------------------------------------------------------------- functoriality

Cochain pullback_cochain(const GroupHom& f, const Cochain& c, const GModule& restricted) {
    if (!f.codomain().same_as(c.module().group()))
        fail(ErrorKind::CodomainMismatch, "pullback map does not land in the cochain's group");
    if (!restricted.group().same_as(f.domain()) || !(restricted.coeff() == c.module().coeff()))
        fail(ErrorKind::TypeMismatch, "restricted module does not match the pullback");
    const int n = c.degree();
    std::vector<Elem> img(n);
    return Cochain::from_function(restricted, n, [&](std::span<const Elem> t) {
        for (int i = 0; i < n; ++i)
            img[i] = f(t[i]);
        return c.value(img);
    });
}

Cochain pushforward_cochain(const AbMap& t, const Cochain& c, const GModule& target) {
    if (!(t.source() == c.module().coeff()) || !(t.target() == target.coeff()) ||
        !target.group().same_as(c.module().group()))
        fail(ErrorKind::TypeMismatch, "coefficient map does not match the cochain");
    Cochain out(target, c.degree());
    for (size_t k = 0; k < c.tuple_count(); ++k)
        out.set_at(k, t(c.value_at(k)));
    return out;
}

} // namespace obstrukt
