#include "obstrukt/cohomology.hpp"

#include "obstrukt/error.hpp"
#include "obstrukt/fp_linalg.hpp"

#include <algorithm>
#include <mutex>
#include <string>

namespace obstrukt {

struct CohomologyGroup::Impl {
    GModule module;
    int degree = 0;
    FinAbGroup group;

    virtual ~Impl() = default;
    /// Nothing if z is not a cocycle.
    virtual std::optional<AbElem> project(const Cochain& z) const = 0;
    virtual Cochain lift(const AbElem& h) const = 0;
    /// Only called on cocycles whose class is zero.
    virtual Cochain preimage(const Cochain& z) const = 0;
};

namespace {

using SparseRow = std::vector<std::pair<size_t, Int>>;

std::vector<size_t> evenly_spaced(size_t total, size_t target) {
    std::vector<size_t> out;
    if (target >= total) {
        out.resize(total);
        for (size_t i = 0; i < total; ++i)
            out[i] = i;
        return out;
    }
    for (size_t i = 0; i < target; ++i)
        out.push_back(i * total / target);
    return out;
}

// ---------------------------------------------------------------- zero groups

struct ZeroImpl : CohomologyGroup::Impl {
    std::optional<AbElem> project(const Cochain& z) const override {
        if (!z.is_zero())
            return std::nullopt;
        return AbElem{};
    }
    Cochain lift(const AbElem&) const override { return Cochain(module, degree); }
    Cochain preimage(const Cochain&) const override { return Cochain(module, degree - 1); }
};

// ---------------------------------------------------------------- F_p backend

struct FpImpl : CohomologyGroup::Impl {
    uint32_t p = 2;
    size_t cn = 0, cprev = 0, h = 0;
    fp::Echelon combined{2, 0, 0};
    std::vector<fp::Row> reps;

    fp::Row to_row(const Cochain& z) const {
        fp::Row r(p, combined.total());
        const auto& d = z.data();
        for (size_t i = 0; i < cn; ++i)
            if (d[i])
                r.set(i, static_cast<uint32_t>(d[i] % p));
        return r;
    }

    std::optional<AbElem> project(const Cochain& z) const override {
        fp::Row r = to_row(z);
        combined.reduce(r);
        if (r.first_nonzero() < cn)
            return std::nullopt;
        AbElem a(h);
        for (size_t i = 0; i < h; ++i)
            a[i] = (p - r.get(cn + cprev + i)) % p;
        return a;
    }

    Cochain lift(const AbElem& a) const override {
        std::vector<Int> data(cn, 0);
        for (size_t i = 0; i < h; ++i) {
            Int c = linalg::mod(a[i], p);
            if (!c)
                continue;
            for (size_t k = reps[i].first_nonzero(); k < cn; k = reps[i].first_nonzero(k + 1))
                data[k] = (data[k] + c * reps[i].get(k)) % p;
        }
        return Cochain::from_data(module, degree, std::move(data));
    }

    Cochain preimage(const Cochain& z) const override {
        fp::Row r = to_row(z);
        combined.reduce(r);
        std::vector<Int> b(cprev, 0);
        for (size_t j = 0; j < cprev; ++j)
            b[j] = (p - r.get(cn + j)) % p;
        return Cochain::from_data(module, degree - 1, std::move(b));
    }
};

fp::Row sparse_to_row(uint32_t p, size_t len, const SparseRow& s) {
    fp::Row r(p, len);
    for (auto [c, v] : s) {
        Int x = linalg::mod(v, p);
        if (x)
            r.add_at(c, static_cast<uint32_t>(x));
    }
    return r;
}

std::shared_ptr<const CohomologyGroup::Impl> build_fp(const GModule& m, int n, uint32_t p,
                                                       const CohomologyOptions& opts) {
    auto impl = std::make_shared<FpImpl>();
    impl->module = m;
    impl->degree = n;
    impl->p = p;
    DifferentialOperator dn(m, n);
    const size_t cn = dn.cols();
    const size_t rows = dn.rows();
    if (rows > opts.max_rows)
        fail(ErrorKind::BudgetExceeded, "d^" + std::to_string(n) + " has " + std::to_string(rows) +
                                            " rows, above the cap of " + std::to_string(opts.max_rows));
    impl->cn = cn;

    // Z^n: nullspace of d^n by lazy constraint generation. The nullspace of
    // any subset of rows contains Z^n; it equals Z^n once no row is violated.
    fp::Echelon cons(p, cn, cn);
    SparseRow buf;
    std::vector<bool> active(rows, false);
    for (size_t row : evenly_spaced(rows, cn + 64)) {
        active[row] = true;
        dn.row(row, buf);
        cons.insert(sparse_to_row(p, cn, buf));
    }
    std::vector<fp::Row> t;
    size_t k = 0;
    for (;;) {
        t = cons.nullspace_transposed(k);
        if (k == 0)
            break;
        fp::Row acc(p, k);
        std::vector<size_t> violated;
        for (size_t row = 0; row < rows; ++row) {
            if (active[row])
                continue;
            dn.row(row, buf);
            acc = fp::Row(p, k);
            for (auto [c, v] : buf) {
                Int x = linalg::mod(v, p);
                if (x)
                    acc.axpy(static_cast<uint32_t>(x), t[c]);
            }
            if (!acc.is_zero()) {
                violated.push_back(row);
                if (violated.size() >= cn + 64)
                    break;
            }
        }
        if (violated.empty())
            break;
        for (size_t row : violated) {
            active[row] = true;
            dn.row(row, buf);
            cons.insert(sparse_to_row(p, cn, buf));
        }
    }

    // B^n from the columns of d^{n-1}, tagged so preimages can be read off.
    size_t cprev = 0;
    std::optional<DifferentialOperator> dprev;
    if (n > 0) {
        dprev.emplace(m, n - 1);
        cprev = dprev->cols();
    }
    impl->cprev = cprev;
    impl->combined = fp::Echelon(p, cn, cn + cprev + k);
    for (size_t j = 0; j < cprev; ++j) {
        dprev->column(j, buf);
        fp::Row row = sparse_to_row(p, cn + cprev + k, buf);
        row.set(cn + j, 1);
        impl->combined.insert(std::move(row));
    }
    // H^n: basis vectors of Z^n independent modulo B^n and each other.
    for (size_t i = 0; i < k; ++i) {
        fp::Row z(p, cn + cprev + k);
        for (size_t c = 0; c < cn; ++c)
            if (uint32_t v = t[c].get(i))
                z.set(c, v);
        impl->combined.reduce(z);
        size_t lead = z.first_nonzero();
        if (lead >= cn)
            continue;
        fp::Row rep(p, cn);
        fp::Row tagged(p, cn + cprev + k);
        for (size_t c = lead; c < cn; c = z.first_nonzero(c + 1)) {
            rep.set(c, z.get(c));
            tagged.set(c, z.get(c));
        }
        tagged.set(cn + cprev + impl->h, 1);
        impl->combined.insert(std::move(tagged));
        impl->reps.push_back(std::move(rep));
        ++impl->h;
    }
    impl->group = FinAbGroup(std::vector<Int>(impl->h, p));
    return impl;
}

// ---------------------------------------------------------------- general backend

struct GeneralImpl : CohomologyGroup::Impl {
    Int e = 1;
    std::vector<Int> moduli_n;
    std::optional<linalg::SubgroupSpan> z;
    linalg::QuotientData q;
    std::optional<DifferentialOperator> dprev;
    mutable std::once_flag snf_once;
    mutable linalg::ModSnf dprev_snf;

    std::optional<AbElem> project(const Cochain& c) const override {
        auto coords = z->coordinates(c.data());
        if (!coords)
            return std::nullopt;
        AbElem h(group.rank(), 0);
        for (size_t a = 0; a < group.rank(); ++a) {
            __int128 acc = 0;
            for (size_t j = 0; j < coords->size(); ++j)
                acc += static_cast<__int128>(q.projection(a, j)) * (*coords)[j];
            h[a] = linalg::mod(static_cast<Int>(acc % group.factors()[a]), group.factors()[a]);
        }
        return h;
    }

    Cochain lift(const AbElem& h) const override {
        const auto& zf = z->group().factors();
        AbElem zc(zf.size(), 0);
        for (size_t j = 0; j < zf.size(); ++j) {
            __int128 acc = 0;
            for (size_t a = 0; a < h.size(); ++a)
                acc += static_cast<__int128>(q.lift(j, a)) * h[a];
            zc[j] = linalg::mod(static_cast<Int>(acc % zf[j]), zf[j]);
        }
        return Cochain::from_data(module, degree, z->include(zc));
    }

    Cochain preimage(const Cochain& c) const override {
        const size_t cn = moduli_n.size();
        const size_t cp = dprev->cols();
        std::call_once(snf_once, [&] {
            IntMatrix a(cn, cp + cn);
            SparseRow buf;
            for (size_t j = 0; j < cp; ++j) {
                dprev->column(j, buf);
                for (auto [row, v] : buf)
                    a(row, j) += v;
            }
            for (size_t i = 0; i < cn; ++i)
                a(i, cp + i) = moduli_n[i];
            dprev_snf = linalg::snf_mod(std::move(a), e);
        });
        auto x = linalg::solve(dprev_snf, c.data());
        ensure(x.has_value(), "coboundary system unexpectedly unsolvable");
        x->resize(cp);
        return Cochain::from_data(module, degree - 1, std::move(*x));
    }
};

std::shared_ptr<const CohomologyGroup::Impl> build_general(const GModule& m, int n, const CohomologyOptions& opts) {
    auto impl = std::make_shared<GeneralImpl>();
    impl->module = m;
    impl->degree = n;
    const auto& f = m.coeff().factors();
    const size_t r = f.size();
    const Int e = m.coeff().exponent();
    impl->e = e;
    DifferentialOperator dn(m, n);
    const size_t cn = dn.cols(), rows = dn.rows();
    if (rows > opts.max_rows)
        fail(ErrorKind::BudgetExceeded, "d^" + std::to_string(n) + " has too many rows");
    if (cn > 6000)
        fail(ErrorKind::BudgetExceeded, "cochain space too large for non-elementary coefficients");
    impl->moduli_n.resize(cn);
    for (size_t i = 0; i < cn; ++i)
        impl->moduli_n[i] = f[i % r];

    std::vector<bool> active(rows, false);
    std::vector<size_t> active_list = evenly_spaced(rows, cn + 64);
    for (size_t row : active_list)
        active[row] = true;
    SparseRow buf;
    std::vector<AbElem> gens;
    for (;;) {
        IntMatrix a(active_list.size(), cn);
        std::vector<Int> row_moduli(active_list.size());
        for (size_t i = 0; i < active_list.size(); ++i) {
            dn.row(active_list[i], buf);
            for (auto [c, v] : buf)
                a(i, c) += v;
            row_moduli[i] = f[active_list[i] % r];
        }
        gens = linalg::kernel_generators(a, row_moduli, e);
        std::vector<size_t> violated;
        for (auto& g : gens) {
            for (size_t i = 0; i < cn; ++i)
                g[i] = linalg::mod(g[i], impl->moduli_n[i]);
            auto dz = differential(Cochain::from_data(m, n, g));
            const auto& d = dz.data();
            for (size_t row = 0; row < d.size(); ++row)
                if (d[row] && !active[row]) {
                    active[row] = true;
                    violated.push_back(row);
                }
            if (violated.size() >= cn + 64)
                break;
        }
        if (violated.empty())
            break;
        active_list.insert(active_list.end(), violated.begin(), violated.end());
        std::sort(active_list.begin(), active_list.end());
    }
    impl->z.emplace(impl->moduli_n, gens);
    const auto& zg = impl->z->group();

    std::vector<AbElem> bcoords;
    if (n > 0) {
        impl->dprev.emplace(m, n - 1);
        for (size_t j = 0; j < impl->dprev->cols(); ++j) {
            impl->dprev->column(j, buf);
            AbElem v(cn, 0);
            for (auto [row, x] : buf)
                v[row] += x;
            for (size_t i = 0; i < cn; ++i)
                v[i] = linalg::mod(v[i], impl->moduli_n[i]);
            auto c = impl->z->coordinates(v);
            ensure(c.has_value(), "coboundary outside the cocycles");
            bcoords.push_back(std::move(*c));
        }
    }
    impl->q = linalg::quotient_by(zg.factors(), bcoords);
    impl->group = impl->q.group;
    return impl;
}

} // namespace

// ---------------------------------------------------------------- public API

const GModule& CohomologyGroup::module() const { return impl_->module; }
int CohomologyGroup::degree() const { return impl_->degree; }
const FinAbGroup& CohomologyGroup::group() const { return impl_->group; }

Cochain CohomologyGroup::lift(const AbElem& h) const {
    if (h.size() != group().rank())
        fail(ErrorKind::InvalidInput, "cohomology element has wrong rank");
    return impl_->lift(group().reduce(h));
}

bool CohomologyGroup::is_cocycle(const Cochain& z) const {
    if (z.degree() != degree() || !z.module().same_as(module()))
        fail(ErrorKind::TypeMismatch, "cochain does not belong to this cohomology group");
    return differential(z).is_zero();
}

AbElem CohomologyGroup::project(const Cochain& z) const {
    if (z.degree() != degree() || !z.module().same_as(module()))
        fail(ErrorKind::TypeMismatch, "cochain does not belong to this cohomology group");
    auto h = impl_->project(z);
    if (!h)
        fail(ErrorKind::NotACocycle, "cochain of degree " + std::to_string(degree()) + " is not a cocycle");
    return *h;
}

std::optional<Cochain> CohomologyGroup::coboundary_preimage(const Cochain& z) const {
    if (degree() == 0)
        fail(ErrorKind::InvalidInput, "degree-0 classes have no coboundary preimages");
    AbElem h = project(z);
    if (!group().is_zero(h))
        return std::nullopt;
    Cochain b = impl_->preimage(z);
    ensure(differential(b) == z, "coboundary preimage check failed");
    return b;
}

CohomologyClass CohomologyGroup::class_of(const Cochain& z) const { return CohomologyClass(*this, project(z)); }
CohomologyClass CohomologyGroup::element(const AbElem& h) const { return CohomologyClass(*this, group().reduce(h)); }
CohomologyClass CohomologyGroup::zero() const { return CohomologyClass(*this, group().zero()); }

std::vector<CohomologyClass> CohomologyGroup::all_classes() const {
    std::vector<CohomologyClass> out;
    for (const auto& h : group().elements())
        out.emplace_back(*this, h);
    return out;
}

CohomologyClass::CohomologyClass(CohomologyGroup parent, AbElem element)
    : parent_(std::move(parent)), element_(std::move(element)) {}

bool classes_equal(const CohomologyClass& a, const CohomologyClass& b) {
    if (a.parent().same_as(b.parent()))
        return a.element() == b.element();
    if (a.parent().degree() != b.parent().degree() || !a.parent().module().same_as(b.parent().module()))
        fail(ErrorKind::TypeMismatch, "classes live in different cohomology groups");
    return a.parent().group().is_zero(a.parent().project(a.representative() - b.representative()));
}

CohomologyGroup cohomology(const GModule& m, int degree, const CohomologyOptions& opts) {
    if (degree < 0)
        fail(ErrorKind::InvalidInput, "negative degree");
    if (degree > opts.max_degree)
        fail(ErrorKind::BudgetExceeded, "degree " + std::to_string(degree) + " is above the cap of " +
                                            std::to_string(opts.max_degree));
    const size_t r = m.coeff().rank();
    for (int d : {degree, degree - 1}) {
        if (d < 0)
            continue;
        size_t t = cochain_tuple_count(m.group(), d), c;
        if (__builtin_mul_overflow(t, r, &c) || c > opts.max_coordinates)
            fail(ErrorKind::BudgetExceeded, "C^" + std::to_string(d) + " exceeds the coordinate budget of " +
                                                std::to_string(opts.max_coordinates));
    }
    size_t rows_t = cochain_tuple_count(m.group(), degree + 1), rows;
    if (__builtin_mul_overflow(rows_t, r, &rows) || rows > opts.max_rows)
        fail(ErrorKind::BudgetExceeded, "C^" + std::to_string(degree + 1) + " exceeds the row budget");
    std::shared_ptr<const CohomologyGroup::Impl> impl;
    if (r == 0 || cochain_tuple_count(m.group(), degree) == 0) {
        auto z = std::make_shared<ZeroImpl>();
        z->module = m;
        z->degree = degree;
        impl = z;
    } else if (Int p = m.coeff().elementary_prime()) {
        impl = build_fp(m, degree, static_cast<uint32_t>(p), opts);
    } else {
        impl = build_general(m, degree, opts);
    }
    return CohomologyGroup(std::move(impl));
}

CohomologyClass pullback(const GroupHom& f, const CohomologyClass& c, const std::optional<CohomologyGroup>& target) {
    const GModule& m = c.parent().module();
    if (!f.codomain().same_as(m.group()))
        fail(ErrorKind::CodomainMismatch, "pullback map does not land in the class's group");
    GModule restricted = restrict_module(m, f);
    if (target && (!target->module().same_as(restricted) || target->degree() != c.parent().degree()))
        fail(ErrorKind::TypeMismatch, "target cohomology group does not match the pullback");
    CohomologyGroup tg = target ? *target : cohomology(restricted, c.parent().degree());
    return tg.class_of(pullback_cochain(f, c.representative(), tg.module()));
}

CohomologyClass pushforward(const AbMap& t, const GModule& target_module, const CohomologyClass& c,
                            const std::optional<CohomologyGroup>& target) {
    check_equivariant(c.parent().module(), target_module, t);
    if (target && (!target->module().same_as(target_module) || target->degree() != c.parent().degree()))
        fail(ErrorKind::TypeMismatch, "target cohomology group does not match the pushforward");
    CohomologyGroup tg = target ? *target : cohomology(target_module, c.parent().degree());
    return tg.class_of(pushforward_cochain(t, c.representative(), tg.module()));
}

} // namespace obstrukt
