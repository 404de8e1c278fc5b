#include "pmesym/pde.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "pmesym/errors.hpp"
#include "pmesym/rng.hpp"

namespace pmesym {

PMEInstance::PMEInstance(int n_dim, Rational m_exp) : n(n_dim), m(std::move(m_exp)) {
    if (n < 1) throw InvalidArgument("dimension must be >= 1");
    if (m == Rational(0) || m == Rational(1))
        throw InvalidArgument("m must avoid {0,1}");
}

bool PMEInstance::special() const { return m == Rational(n - 2, n + 2); }

namespace {

// v^e with the domain rules of the smooth class: fractional exponents need
// v > 0; negative integer exponents need v away from 0.
double powm(double v, const Rational& e) {
    if (e.is_integer()) {
        if (e.num() < 0 && std::abs(v) <= 1e-12)
            throw DomainViolation("near-zero base under a negative integer power");
        return std::pow(v, e.to_double());
    }
    return pow_checked(v, e.to_double());
}

std::string point_str(double t, const Eigen::VectorXd& x) {
    std::ostringstream os;
    os << "(t=" << t << ", x=[";
    for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x(i);
    os << "])";
    return os.str();
}

double eval_checked(const Field& f, double t, const Eigen::VectorXd& x) {
    if (!f.domain(t, x))
        throw DomainViolation("stencil point " + point_str(t, x) + " outside the field domain");
    return f.eval(t, x);
}

std::vector<std::pair<double, Eigen::VectorXd>> draw_centers(const SampleSpec& spec, int n,
                                                             bool with_time) {
    if (!(spec.h > 0)) throw InvalidArgument("stencil spacing must be positive");
    if (spec.count < 1) throw InvalidArgument("sample count must be positive");
    if (int(spec.x_lo.size()) != n || int(spec.x_hi.size()) != n)
        throw ArityMismatch("sample box dimension mismatch");
    const double margin = 2 * spec.h;
    if (with_time && !(spec.t_lo + margin < spec.t_hi - margin))
        throw InvalidArgument("time interval degenerate after the 2h shrink");
    for (int i = 0; i < n; ++i)
        if (!(spec.x_lo(i) + margin < spec.x_hi(i) - margin))
            throw InvalidArgument("x-box degenerate after the 2h shrink");

    Rng rng(spec.seed);
    std::vector<std::pair<double, Eigen::VectorXd>> centers;
    centers.reserve(std::size_t(spec.count));
    for (int c = 0; c < spec.count; ++c) {
        double t = with_time ? rng.uniform(spec.t_lo + margin, spec.t_hi - margin) : 0.0;
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i)
            x(i) = rng.uniform(spec.x_lo(i) + margin, spec.x_hi(i) - margin);
        centers.emplace_back(t, std::move(x));
    }
    return centers;
}

} // namespace

ResidualReport residual_at_centers(const Field& f, const PMEInstance& inst,
                                   const std::vector<std::pair<double, Eigen::VectorXd>>& centers,
                                   double h, bool skip_bad_points) {
    if (f.n != inst.n) throw ArityMismatch("field/instance dimension mismatch");
    ResidualReport rep;
    rep.h = h;
    std::vector<std::string> violations;
    double sum = 0;
    for (const auto& [t, x] : centers) {
        try {
            const double ut = (eval_checked(f, t + h, x) - eval_checked(f, t - h, x)) / (2 * h);
            double lap = 0;
            const double fc = powm(eval_checked(f, t, x), inst.m);
            for (int i = 0; i < inst.n; ++i) {
                Eigen::VectorXd xp = x, xm = x;
                xp(i) += h;
                xm(i) -= h;
                lap += (powm(eval_checked(f, t, xp), inst.m) - 2 * fc +
                        powm(eval_checked(f, t, xm), inst.m)) / (h * h);
            }
            const double val = std::abs(ut - lap);
            rep.max_abs = std::max(rep.max_abs, val);
            sum += val;
            ++rep.count;
            std::vector<double> row = {t};
            for (int i = 0; i < inst.n; ++i) row.push_back(x(i));
            row.push_back(val);
            rep.points.push_back(std::move(row));
        } catch (const DomainViolation& e) {
            if (skip_bad_points) {
                ++rep.skipped;
            } else {
                violations.push_back("center " + point_str(t, x) + ": " + e.what());
            }
        } catch (const Error&) {
            if (!skip_bad_points) throw;
            ++rep.skipped;
        }
    }
    if (!violations.empty()) {
        std::string msg = "residual stencil violations:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw DomainViolation(msg);
    }
    if (rep.count > 0) rep.mean_abs = sum / rep.count;
    return rep;
}

ResidualReport residual(const Field& f, const PMEInstance& inst, const SampleSpec& spec,
                        bool skip_bad_points) {
    auto centers = draw_centers(spec, inst.n, true);
    ResidualReport rep = residual_at_centers(f, inst, centers, spec.h, skip_bad_points);
    rep.seed = spec.seed;
    return rep;
}

namespace {

void enumerate_monomials(int n, int d, std::vector<std::uint32_t>& cur,
                         std::vector<std::vector<std::uint32_t>>& out) {
    if (int(cur.size()) == n - 1) {
        cur.push_back(std::uint32_t(d));
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = d; e >= 0; --e) {
        cur.push_back(std::uint32_t(e));
        enumerate_monomials(n, d - e, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<std::uint32_t>> monomials_of_degree(int n, int d) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur;
    enumerate_monomials(n, d, cur, out);
    return out;
}

} // namespace

std::vector<MultiPoly> harmonic_basis(int n, int d) {
    if (n < 1) throw InvalidArgument("dimension must be >= 1");
    if (d < 0) throw InvalidArgument("degree must be >= 0");

    const auto cols_m = monomials_of_degree(n, d);
    const int cols = int(cols_m.size());

    auto to_poly = [&](const std::vector<Rational>& v) {
        MultiPoly p(n);
        for (int c = 0; c < cols; ++c) {
            if (v[std::size_t(c)].is_zero()) continue;
            MultiPoly::Monomial mono(std::size_t(n) + 2, 0);
            for (int i = 0; i < n; ++i) mono[std::size_t(i) + 1] = cols_m[std::size_t(c)][std::size_t(i)];
            p.add_term(mono, v[std::size_t(c)]);
        }
        return p;
    };

    if (d < 2) {
        std::vector<MultiPoly> basis;
        for (int c = 0; c < cols; ++c) {
            std::vector<Rational> v(std::size_t(cols), Rational(0));
            v[std::size_t(c)] = Rational(1);
            basis.push_back(to_poly(v));
        }
        return basis;
    }

    const auto rows_m = monomials_of_degree(n, d - 2);
    const int rows = int(rows_m.size());
    std::map<std::vector<std::uint32_t>, int> row_index;
    for (int r = 0; r < rows; ++r) row_index[rows_m[std::size_t(r)]] = r;

    // a[r][c] = coefficient of row monomial r in Laplacian(column monomial c)
    std::vector<std::vector<Rational>> a(std::size_t(rows),
                                         std::vector<Rational>(std::size_t(cols), Rational(0)));
    for (int c = 0; c < cols; ++c) {
        const auto& e = cols_m[std::size_t(c)];
        for (int i = 0; i < n; ++i) {
            if (e[std::size_t(i)] < 2) continue;
            auto tgt = e;
            tgt[std::size_t(i)] -= 2;
            const std::int64_t k = e[std::size_t(i)];
            a[std::size_t(row_index.at(tgt))][std::size_t(c)] += Rational(k * (k - 1));
        }
    }

    // exact reduced row echelon form
    std::vector<int> pivot_cols;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int sel = -1;
        for (int row = rank; row < rows; ++row)
            if (!a[std::size_t(row)][std::size_t(col)].is_zero()) { sel = row; break; }
        if (sel < 0) continue;
        std::swap(a[std::size_t(rank)], a[std::size_t(sel)]);
        const Rational inv = Rational(1) / a[std::size_t(rank)][std::size_t(col)];
        for (int cc = col; cc < cols; ++cc) a[std::size_t(rank)][std::size_t(cc)] = a[std::size_t(rank)][std::size_t(cc)] * inv;
        for (int row = 0; row < rows; ++row) {
            if (row == rank) continue;
            const Rational f = a[std::size_t(row)][std::size_t(col)];
            if (f.is_zero()) continue;
            for (int cc = col; cc < cols; ++cc)
                a[std::size_t(row)][std::size_t(cc)] = a[std::size_t(row)][std::size_t(cc)] - f * a[std::size_t(rank)][std::size_t(cc)];
        }
        pivot_cols.push_back(col);
        ++rank;
    }

    std::vector<bool> is_pivot(std::size_t(cols), false);
    for (int c : pivot_cols) is_pivot[std::size_t(c)] = true;

    std::vector<MultiPoly> basis;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_pivot[std::size_t(fc)]) continue;
        std::vector<Rational> v(std::size_t(cols), Rational(0));
        v[std::size_t(fc)] = Rational(1);
        for (int r = 0; r < rank; ++r)
            v[std::size_t(pivot_cols[std::size_t(r)])] = -a[std::size_t(r)][std::size_t(fc)];
        basis.push_back(to_poly(v));
    }
    return basis;
}

namespace {

MultiPoly spatial_laplacian(const MultiPoly& k) {
    MultiPoly lap(k.nvars());
    for (int i = 1; i <= k.nvars(); ++i) lap = lap + poly_diff(poly_diff(k, i), i);
    return lap;
}

bool depends_on_slot(const MultiPoly& k, int slot) {
    for (const auto& [mono, coef] : k.terms())
        if (mono[std::size_t(slot)] != 0) return true;
    return false;
}

} // namespace

Field stationary_solution(const MultiPoly& k, const PMEInstance& inst) {
    if (k.nvars() != inst.n) throw ArityMismatch("polynomial/instance dimension mismatch");
    if (depends_on_slot(k, 0) || depends_on_slot(k, inst.n + 1))
        throw InvalidArgument("k must be a polynomial in x only");
    if (!spatial_laplacian(k).is_zero())
        throw InvalidArgument("k is not harmonic: Laplacian(k) != 0");

    const double r = inst.r_param();
    const Rational inv_m = Rational(1) / inst.m;
    const int n = inst.n;
    auto kval = [k, n](const Eigen::VectorXd& x) {
        std::vector<double> pt(std::size_t(n) + 2, 0.0);
        for (int i = 0; i < n; ++i) pt[std::size_t(i) + 1] = x(i);
        return poly_eval(k, pt);
    };
    return make_field(
        n, CharacterParams{0, r, r},
        [kval, inv_m](double, const Eigen::VectorXd& x) { return powm(kval(x), inv_m); },
        [kval](double, const Eigen::VectorXd& x) { return kval(x) > 0; });
}

Field separable_solution(const Profile& f_profile, double t0, const PMEInstance& inst) {
    if (f_profile.n != inst.n) throw ArityMismatch("profile/instance dimension mismatch");
    const double md = inst.m.to_double();
    const double r = inst.r_param();
    const double expo = -1.0 / (md - 1.0);
    auto prof = f_profile;
    if (!prof.domain) prof.domain = [](const Eigen::VectorXd&) { return true; };
    return make_field(
        inst.n, CharacterParams{0, r, r},
        [prof, md, t0, expo](double t, const Eigen::VectorXd& x) {
            const double base = (md - 1.0) * (t - t0);
            return pow_checked(base, expo) * prof.eval(x);
        },
        [prof, md, t0](double t, const Eigen::VectorXd& x) {
            return (md - 1.0) * (t - t0) > 0 && prof.domain(x);
        });
}

ResidualReport profile_residual(const Profile& f_profile, const PMEInstance& inst,
                                const SampleSpec& spec) {
    if (f_profile.n != inst.n) throw ArityMismatch("profile/instance dimension mismatch");
    auto prof = f_profile;
    if (!prof.domain) prof.domain = [](const Eigen::VectorXd&) { return true; };
    auto eval_p = [&](const Eigen::VectorXd& x) {
        if (!prof.domain(x))
            throw DomainViolation("stencil point " + point_str(0, x) + " outside the profile domain");
        return prof.eval(x);
    };

    const auto centers = draw_centers(spec, inst.n, false);
    const double h = spec.h;
    ResidualReport rep;
    rep.h = h;
    rep.seed = spec.seed;
    std::vector<std::string> violations;
    double sum = 0;
    for (const auto& [t, x] : centers) {
        (void)t;
        try {
            double lap = 0;
            const double fc = powm(eval_p(x), inst.m);
            for (int i = 0; i < inst.n; ++i) {
                Eigen::VectorXd xp = x, xm = x;
                xp(i) += h;
                xm(i) -= h;
                lap += (powm(eval_p(xp), inst.m) - 2 * fc + powm(eval_p(xm), inst.m)) / (h * h);
            }
            const double val = std::abs(lap + eval_p(x));
            rep.max_abs = std::max(rep.max_abs, val);
            sum += val;
            ++rep.count;
            std::vector<double> row = {0.0};
            for (int i = 0; i < inst.n; ++i) row.push_back(x(i));
            row.push_back(val);
            rep.points.push_back(std::move(row));
        } catch (const DomainViolation& e) {
            violations.push_back("center " + point_str(0, x) + ": " + e.what());
        }
    }
    if (!violations.empty()) {
        std::string msg = "profile stencil violations:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw DomainViolation(msg);
    }
    if (rep.count > 0) rep.mean_abs = sum / rep.count;
    return rep;
}

Profile separable_profile_1d(const PMEInstance& inst, double x_half, double step) {
    if (inst.n != 1) throw InvalidArgument("shooting profile is one-dimensional");
    if (!(x_half > 0) || !(step > 0) || step > x_half)
        throw InvalidArgument("bad profile domain parameters");

    const Rational inv_m = Rational(1) / inst.m;
    auto rhs = [&](double g) { return -powm(g, inv_m); };

    // integrate G'' = -G^{1/m} to the right; the profile is even
    const int kmax = int(std::ceil(x_half / step)) + 1;
    auto gs = std::make_shared<std::vector<double>>();
    auto ps = std::make_shared<std::vector<double>>();
    double g = 1.0, p = 0.0;
    gs->push_back(g);
    ps->push_back(p);
    for (int k = 0; k < kmax; ++k) {
        // RK4 on the first-order system (G, P), G' = P, P' = -G^{1/m}
        const double k1g = p, k1p = rhs(g);
        const double k2g = p + step / 2 * k1p, k2p = rhs(g + step / 2 * k1g);
        const double k3g = p + step / 2 * k2p, k3p = rhs(g + step / 2 * k2g);
        const double k4g = p + step * k3p, k4p = rhs(g + step * k3g);
        g += step / 6 * (k1g + 2 * k2g + 2 * k3g + k4g);
        p += step / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
        if (!(g > 0.05))
            throw InvalidArgument("profile domain too wide: G leaves the positive region");
        gs->push_back(g);
        ps->push_back(p);
    }

    Profile prof;
    prof.n = 1;
    prof.eval = [gs, ps, step, inv_m, x_half](const Eigen::VectorXd& x) {
        const double u = std::abs(x(0));
        if (u > x_half) throw DomainViolation("profile evaluated outside |x| <= x_half");
        const int k = std::min(int(u / step), int(gs->size()) - 2);
        const double tau = u / step - k;
        const double h00 = (1 + 2 * tau) * (1 - tau) * (1 - tau);
        const double h10 = tau * (1 - tau) * (1 - tau);
        const double h01 = tau * tau * (3 - 2 * tau);
        const double h11 = tau * tau * (tau - 1);
        const double gv = h00 * (*gs)[std::size_t(k)] + h10 * step * (*ps)[std::size_t(k)] +
                          h01 * (*gs)[std::size_t(k) + 1] + h11 * step * (*ps)[std::size_t(k) + 1];
        return powm(gv, inv_m);
    };
    prof.domain = [x_half](const Eigen::VectorXd& x) { return std::abs(x(0)) <= x_half; };
    return prof;
}

SymmetryReport symmetry_check(const std::vector<ActionStep>& word, const Field& f,
                              const PMEInstance& inst, const SampleSpec& spec,
                              bool allow_sl2_lower) {
    for (const auto& s : word) {
        if (s.type == StepType::Sl2Lower && !allow_sl2_lower)
            throw RejectedElement("word uses the lower-triangular sl2 direction");
        if (s.type == StepType::Generic) {
            if (!s.g) throw InvalidArgument("generic step without a group element");
            if (std::abs(s.g->sl2(1, 0)) > 1e-12 && !allow_sl2_lower)
                throw RejectedElement("generic element has a lower-triangular sl2 component");
        }
    }
    const double r = inst.r_param();
    if (std::abs(f.params.r - r) > 1e-12 || std::abs(f.params.s - r) > 1e-12)
        throw InvalidArgument("field character parameters must be (p, 2/(m-1), 2/(m-1))");

    const auto centers = draw_centers(spec, inst.n, true);
    const ResidualReport before = residual_at_centers(f, inst, centers, spec.h, true);

    const Field acted = apply_word(word, f);
    std::vector<std::pair<double, Eigen::VectorXd>> pushed;
    for (auto [t, x] : centers) {
        try {
            for (auto it = word.rbegin(); it != word.rend(); ++it) step_pull_center(*it, t, x);
            pushed.emplace_back(t, std::move(x));
        } catch (const Error&) {
            // center leaves the accessible region under this word; drop it
        }
    }
    const ResidualReport after = residual_at_centers(acted, inst, pushed, spec.h, true);

    SymmetryReport rep;
    rep.residual_before = before.max_abs;
    rep.residual_after = after.max_abs;
    rep.count_before = before.count;
    rep.count_after = after.count;
    rep.h = spec.h;
    rep.seed = spec.seed;
    rep.threshold = std::max(10.0 * before.max_abs, 1e-5);
    rep.passed = after.count > 0 && after.max_abs <= rep.threshold;
    return rep;
}

std::vector<ActionStep> random_symmetry_word(Rng& rng, const PMEInstance& inst, int max_len) {
    const bool with_conformal = inst.special();
    const int len = rng.uniform_int(1, max_len);
    std::vector<ActionStep> word;
    for (int k = 0; k < len; ++k) {
        int kinds = 3 + (inst.n >= 2 ? 1 : 0) + (with_conformal ? 1 : 0);
        int pick = rng.uniform_int(0, kinds - 1);
        ActionStep s;
        if (pick == 0) {
            s.type = StepType::Translation;
            s.t = rng.uniform(-0.3, 0.3);
            s.x = rng.uniform_vector(inst.n, -0.1, 0.1);
        } else if (pick == 1) {
            s.type = StepType::Dilation;
            s.eps = rng.uniform(-0.15, 0.15);
        } else if (pick == 2) {
            s.type = StepType::Sl2Upper;
            s.a = rng.uniform(0.9, 1.1);
            s.b = rng.uniform(-0.2, 0.2);
        } else if (pick == 3 && inst.n >= 2) {
            s.type = StepType::Rotation;
            s.i = rng.uniform_int(1, inst.n - 1);
            s.j = rng.uniform_int(s.i + 1, inst.n);
            s.theta = rng.uniform(0.0, 6.283185307179586477);
        } else {
            s.type = StepType::Conformal;
            s.i = rng.uniform_int(1, inst.n);
            s.eps = rng.uniform(-0.06, 0.06);
        }
        word.push_back(std::move(s));
    }
    return word;
}

} // namespace pmesym
