#include "pmesym/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmesym/decomp.hpp"
#include "pmesym/errors.hpp"
#include "pmesym/pde.hpp"
#include "pmesym/report.hpp"
#include "pmesym/rng.hpp"
#include "pmesym/vecfields.hpp"

namespace pmesym {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string resolve_out_dir(const std::string& flag) {
    std::string dir = ".";
    if (!flag.empty()) dir = flag;
    else if (const char* env = std::getenv("PMESYM_OUT_DIR"); env && *env) dir = env;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw InvalidArgument("cannot create output directory '" + dir + "': " + ec.message());
    return dir;
}

GroupElement ge_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    if (n < 1) throw InvalidArgument("group element needs n >= 1");
    const auto sl2 = j.at("sl2").get<std::vector<double>>();
    const auto lor = j.at("lorentz").get<std::vector<double>>();
    if (sl2.size() != 4) throw InvalidArgument("sl2 must have 4 row-major entries");
    if (int(lor.size()) != (n + 2) * (n + 2))
        throw InvalidArgument("lorentz must have (n+2)^2 row-major entries");
    GroupElement g;
    g.sl2 << sl2[0], sl2[1], sl2[2], sl2[3];
    g.lorentz.resize(n + 2, n + 2);
    for (int r = 0; r < n + 2; ++r)
        for (int c = 0; c < n + 2; ++c) g.lorentz(r, c) = lor[std::size_t(r) * (n + 2) + c];
    validate_group(g, kCtorTol);
    return g;
}

Json matrix_json(const Eigen::MatrixXd& m) {
    Json a = Json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) a.push_back(Json::real(m(r, c)));
    return a;
}

Json ge_to_json(const GroupElement& g) {
    Json j = Json::object();
    j["n"] = Json::integer(g.n());
    j["sl2"] = matrix_json(g.sl2);
    j["lorentz"] = matrix_json(g.lorentz);
    return j;
}

ActionStep step_from_json(const json& j, int n) {
    const std::string type = j.at("type").get<std::string>();
    ActionStep s;
    if (type == "translation") {
        s.type = StepType::Translation;
        s.t = j.at("t").get<double>();
        const auto xs = j.at("x").get<std::vector<double>>();
        if (int(xs.size()) != n) throw InvalidArgument("translation x has wrong length");
        s.x = Eigen::Map<const Eigen::VectorXd>(xs.data(), n);
    } else if (type == "rotation") {
        s.type = StepType::Rotation;
        s.i = j.at("i").get<int>();
        s.j = j.at("j").get<int>();
        s.theta = j.at("theta").get<double>();
    } else if (type == "dilation") {
        s.type = StepType::Dilation;
        s.eps = j.at("eps").get<double>();
    } else if (type == "sl2_upper") {
        s.type = StepType::Sl2Upper;
        s.a = j.at("a").get<double>();
        s.b = j.at("b").get<double>();
        if (s.a == 0) throw InvalidArgument("sl2_upper needs a != 0");
    } else if (type == "conformal") {
        s.type = StepType::Conformal;
        s.i = j.at("i").get<int>();
        s.eps = j.at("eps").get<double>();
    } else if (type == "sl2_lower") {
        s.type = StepType::Sl2Lower;
        s.eps = j.at("eps").get<double>();
    } else if (type == "generic") {
        s.type = StepType::Generic;
        json ge = j;
        ge["n"] = n;
        s.g = std::make_shared<GroupElement>(ge_from_json(ge));
    } else {
        throw InvalidArgument("unknown step type '" + type + "'");
    }
    return s;
}

void embed_conventions(Json& report) {
    Json arr = Json::array();
    for (const auto& s : sign_conventions()) arr.push_back(Json::str(s));
    report["sign_conventions"] = std::move(arr);
}

Field field_from_spec(const std::string& spec, const PMEInstance& inst, int p) {
    auto fail = [&] { throw InvalidArgument("bad field spec '" + spec + "'"); };
    Field f;
    if (spec.rfind("stationary:", 0) == 0) {
        const std::string rest = spec.substr(11);
        const auto sep = rest.find(':');
        if (sep == std::string::npos) fail();
        int degree = 0, index = 0;
        try {
            degree = std::stoi(rest.substr(0, sep));
            index = std::stoi(rest.substr(sep + 1));
        } catch (const std::exception&) {
            fail();
        }
        const auto basis = harmonic_basis(inst.n, degree);
        if (index < 0 || index >= int(basis.size()))
            throw InvalidArgument("harmonic index out of range (basis size " +
                                  std::to_string(basis.size()) + ")");
        f = stationary_solution(basis[std::size_t(index)], inst);
    } else if (spec.rfind("separable:", 0) == 0) {
        double t0 = 0;
        try {
            t0 = std::stod(spec.substr(10));
        } catch (const std::exception&) {
            fail();
        }
        f = separable_solution(separable_profile_1d(inst, 0.6), t0, inst);
    } else {
        fail();
    }
    f.params.p = p;
    return f;
}

Json residual_json(const ResidualReport& rep) {
    Json j = Json::object();
    j["max_abs"] = Json::real(rep.max_abs);
    j["mean_abs"] = Json::real(rep.mean_abs);
    j["h"] = Json::real(rep.h);
    j["count"] = Json::integer(rep.count);
    j["skipped"] = Json::integer(rep.skipped);
    j["seed"] = Json::integer(std::int64_t(rep.seed));
    return j;
}

void write_report(const std::string& dir, const std::string& name, const Json& j) {
    write_text_file(dir + "/" + name, j.dump());
}

// ---- subcommand payloads ------------------------------------------------

struct CommonOpts {
    int n = 1;
    std::string m_str = "3";
    int p = 0;
    std::string out_dir;
};

int run_algebra_check(const CommonOpts& c, bool full) {
    const Rational m = Rational::parse(c.m_str);
    const ConformanceReport rep = check_homomorphism(c.n, m, full);

    Json j = Json::object();
    j["subcommand"] = Json::str("algebra-check");
    j["n"] = Json::integer(c.n);
    j["m"] = Json::str(m.str());
    j["mode"] = Json::str(full ? "full" : "parabolic");
    Json pairs = Json::array();
    for (const auto& pr : rep.pairs) {
        Json e = Json::object();
        e["x"] = Json::str(pr.key_x);
        e["y"] = Json::str(pr.key_y);
        e["ok"] = Json::boolean(pr.ok);
        pairs.push_back(std::move(e));
    }
    j["pairs_checked"] = Json::integer(std::int64_t(rep.pairs.size()));
    j["pairs"] = std::move(pairs);
    Json fails = Json::array();
    for (const auto& s : rep.failures) fails.push_back(Json::str(s));
    j["failures"] = std::move(fails);
    j["passed"] = Json::boolean(rep.passed);
    embed_conventions(j);
    write_report(resolve_out_dir(c.out_dir), "algebra_check.json", j);
    return rep.passed ? 0 : 1;
}

Json nparams_json(const NParams& p) {
    Json j = Json::object();
    j["t"] = Json::real(p.t);
    Json xs = Json::array();
    for (int i = 0; i < p.x.size(); ++i) xs.push_back(Json::real(p.x(i)));
    j["x"] = std::move(xs);
    return j;
}

int run_decompose(const std::string& input, const std::string& method,
                  const std::string& out_dir_flag) {
    const GroupElement g = ge_from_json(json::parse(read_file(input)));
    const std::string dir = resolve_out_dir(out_dir_flag);

    Json j = Json::object();
    j["subcommand"] = Json::str("decompose");
    j["method"] = Json::str(method);
    j["input"] = ge_to_json(g);
    try {
        if (method == "bruhat") {
            const BruhatFactors bf = bruhat_factor(g);
            j["n_params"] = nparams_json(bf.n_params);
            Json mp = Json::object();
            mp["j"] = Json::integer(bf.m_params.j);
            mp["B"] = matrix_json(bf.m_params.B);
            j["m_params"] = std::move(mp);
            Json ap = Json::object();
            ap["a"] = Json::real(bf.a_params.a);
            ap["y"] = Json::real(bf.a_params.y);
            j["a_params"] = std::move(ap);
            j["nminus_params"] = nparams_json(bf.nminus_params);
            j["residual"] = Json::real(bf.residual);
        } else if (method == "iwasawa") {
            const IwasawaFactors iw = iwasawa_factor(g);
            j["theta"] = Json::real(iw.theta);
            j["k_part"] = ge_to_json(iw.k_part);
            Json ap = Json::object();
            ap["a"] = Json::real(iw.a_params.a);
            ap["y"] = Json::real(iw.a_params.y);
            j["a_params"] = std::move(ap);
            j["nminus_params"] = nparams_json(iw.nminus_params);
            j["residual"] = Json::real(iw.residual);
        } else {
            throw InvalidArgument("method must be bruhat or iwasawa");
        }
    } catch (const OutsideCell& e) {
        j["error"] = Json::str(e.what());
        embed_conventions(j);
        write_report(dir, "decompose.json", j);
        return 1;
    }
    j["passed"] = Json::boolean(true);
    embed_conventions(j);
    write_report(dir, "decompose.json", j);
    return 0;
}

int run_act(const std::string& config_path, const std::string& out_dir_flag) {
    const json cfg = json::parse(read_file(config_path));
    const int n = cfg.at("n").get<int>();
    const Rational m = Rational::parse(cfg.at("m").get<std::string>());
    const int p = cfg.value("p", 0);
    const PMEInstance inst(n, m);
    const Field f = field_from_spec(cfg.at("field").get<std::string>(), inst, p);

    std::vector<ActionStep> word;
    for (const auto& js : cfg.at("word")) word.push_back(step_from_json(js, n));

    const auto& grid = cfg.at("grid");
    const auto tiv = grid.at("t").get<std::vector<double>>();
    if (tiv.size() != 2) throw InvalidArgument("grid.t must be [lo, hi]");
    const auto xiv = grid.at("x").get<std::vector<std::vector<double>>>();
    if (int(xiv.size()) != n) throw InvalidArgument("grid.x must have n [lo, hi] pairs");
    const int count = grid.value("count", 100);
    const std::uint64_t seed = grid.value("seed", std::uint64_t(1));
    const double tol = cfg.value("tol", 1e-8);

    const Field acted = apply_word(word, f);
    GroupElement total = identity_element(n);
    for (const auto& s : word) total = group_mul(total, step_group(s, n));
    const Field gen = act_generic(total, f);

    Rng rng(seed);
    std::vector<std::vector<double>> rows;
    int evaluated = 0, skipped = 0, compared = 0;
    double law_max_rel = 0;
    for (int k = 0; k < count; ++k) {
        const double t = rng.uniform(tiv[0], tiv[1]);
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) {
            if (xiv[std::size_t(i)].size() != 2) throw InvalidArgument("grid.x entries must be [lo, hi]");
            x(i) = rng.uniform(xiv[std::size_t(i)][0], xiv[std::size_t(i)][1]);
        }
        double va = 0;
        bool ok_a = false;
        try {
            if (acted.domain(t, x)) {
                va = acted.eval(t, x);
                ok_a = true;
            }
        } catch (const Error&) {
        }
        if (!ok_a) {
            ++skipped;
            continue;
        }
        ++evaluated;
        std::vector<double> row = {t};
        for (int i = 0; i < n; ++i) row.push_back(x(i));
        row.push_back(va);
        rows.push_back(std::move(row));
        try {
            if (gen.domain(t, x)) {
                const double vg = gen.eval(t, x);
                law_max_rel = std::max(law_max_rel,
                                       std::abs(va - vg) / std::max(1.0, std::abs(va)));
                ++compared;
            }
        } catch (const Error&) {
        }
    }

    const std::string dir = resolve_out_dir(out_dir_flag);
    write_text_file(dir + "/act.csv", csv_table(n, rows));

    Json j = Json::object();
    j["subcommand"] = Json::str("act");
    j["n"] = Json::integer(n);
    j["m"] = Json::str(m.str());
    j["p"] = Json::integer(p);
    j["word_length"] = Json::integer(std::int64_t(word.size()));
    j["samples"] = Json::integer(count);
    j["evaluated"] = Json::integer(evaluated);
    j["singular_or_outside"] = Json::integer(skipped);
    j["law_compared"] = Json::integer(compared);
    j["action_law_max_rel"] = Json::real(law_max_rel);
    j["tol"] = Json::real(tol);
    const bool passed = evaluated > 0 && compared > 0 && law_max_rel <= tol;
    j["passed"] = Json::boolean(passed);
    embed_conventions(j);
    write_report(dir, "act.json", j);
    return passed ? 0 : 1;
}

struct BoxOpts {
    double t_lo = 1, t_hi = 2;
    double x_lo = 0.6, x_hi = 1.6;
    int count = 200;
    double h = 1e-3;
    std::uint64_t seed = 1;
};

SampleSpec make_spec(const BoxOpts& b, int n) {
    SampleSpec s;
    s.t_lo = b.t_lo;
    s.t_hi = b.t_hi;
    s.x_lo = Eigen::VectorXd::Constant(n, b.x_lo);
    s.x_hi = Eigen::VectorXd::Constant(n, b.x_hi);
    s.count = b.count;
    s.h = b.h;
    s.seed = b.seed;
    return s;
}

int run_residual(const CommonOpts& c, const std::string& field_spec, const BoxOpts& box,
                 double tol, bool skip_bad) {
    const PMEInstance inst(c.n, Rational::parse(c.m_str));
    const Field f = field_from_spec(field_spec, inst, c.p);
    const SampleSpec spec = make_spec(box, c.n);
    const ResidualReport rep = residual(f, inst, spec, skip_bad);

    const std::string dir = resolve_out_dir(c.out_dir);
    write_text_file(dir + "/residual.csv", csv_table(c.n, rep.points));
    Json j = Json::object();
    j["subcommand"] = Json::str("residual");
    j["n"] = Json::integer(c.n);
    j["m"] = Json::str(inst.m.str());
    j["field"] = Json::str(field_spec);
    j["summary"] = residual_json(rep);
    j["tol"] = Json::real(tol);
    const bool passed = rep.count > 0 && rep.max_abs <= tol;
    j["passed"] = Json::boolean(passed);
    embed_conventions(j);
    write_report(dir, "residual.json", j);
    return passed ? 0 : 1;
}

int run_verify_symmetry(const CommonOpts& c, const std::string& field_spec, const BoxOpts& box,
                        int words, int max_len, bool negative_control) {
    const PMEInstance inst(c.n, Rational::parse(c.m_str));
    const Field f = field_from_spec(field_spec, inst, c.p);
    const SampleSpec spec = make_spec(box, c.n);

    Rng rng(box.seed);
    bool all_passed = true;
    double worst_after = 0;
    Json fails = Json::array();
    for (int w = 0; w < words; ++w) {
        const auto word = random_symmetry_word(rng, inst, max_len);
        const SymmetryReport rep = symmetry_check(word, f, inst, spec);
        worst_after = std::max(worst_after, rep.residual_after);
        if (!rep.passed) {
            all_passed = false;
            Json e = Json::object();
            e["word_index"] = Json::integer(w);
            e["residual_before"] = Json::real(rep.residual_before);
            e["residual_after"] = Json::real(rep.residual_after);
            e["threshold"] = Json::real(rep.threshold);
            e["count_after"] = Json::integer(rep.count_after);
            fails.push_back(std::move(e));
        }
    }

    Json j = Json::object();
    j["subcommand"] = Json::str("verify-symmetry");
    j["n"] = Json::integer(c.n);
    j["m"] = Json::str(inst.m.str());
    j["field"] = Json::str(field_spec);
    j["words"] = Json::integer(words);
    j["max_len"] = Json::integer(max_len);
    j["seed"] = Json::integer(std::int64_t(box.seed));
    j["h"] = Json::real(box.h);
    j["count"] = Json::integer(box.count);
    j["conformal_steps_included"] = Json::boolean(inst.special());
    j["worst_residual_after"] = Json::real(worst_after);
    j["failures"] = std::move(fails);

    if (negative_control) {
        ActionStep s;
        s.type = StepType::Sl2Lower;
        s.eps = 0.5;
        BoxOpts nb = box;
        nb.t_lo = -0.5;
        nb.t_hi = 0.5;
        const SymmetryReport rep =
            symmetry_check({s}, f, inst, make_spec(nb, c.n), true);
        Json e = Json::object();
        e["residual_after"] = Json::real(rep.residual_after);
        e["detected"] = Json::boolean(rep.residual_after > 1e-2);
        j["negative_control"] = std::move(e);
        if (rep.residual_after <= 1e-2) all_passed = false;
    }

    j["passed"] = Json::boolean(all_passed);
    embed_conventions(j);
    write_report(resolve_out_dir(c.out_dir), "verify_symmetry.json", j);
    return all_passed ? 0 : 1;
}

int run_orbit(const CommonOpts& c, const std::string& field_spec, const std::string& family,
              double eps_max, int steps, double t0, std::vector<double> x0, int axis_i,
              int axis_j) {
    const PMEInstance inst(c.n, Rational::parse(c.m_str));
    const Field f = field_from_spec(field_spec, inst, c.p);
    if (x0.empty()) x0.assign(std::size_t(c.n), 1.0);
    if (int(x0.size()) != c.n) throw InvalidArgument("--x0 needs n components");
    if (steps < 1) throw InvalidArgument("--steps must be positive");

    std::vector<std::vector<double>> rows;
    int skipped = 0;
    for (int k = 0; k <= steps; ++k) {
        const double eps = eps_max * double(k) / double(steps);
        ActionStep s;
        if (family == "translation") {
            s.type = StepType::Translation;
            s.t = eps;
            s.x = Eigen::VectorXd::Zero(c.n);
            s.x(axis_i - 1) = eps;
        } else if (family == "rotation") {
            s.type = StepType::Rotation;
            s.i = axis_i;
            s.j = axis_j;
            s.theta = eps;
        } else if (family == "dilation") {
            s.type = StepType::Dilation;
            s.eps = eps;
        } else if (family == "sl2_upper") {
            s.type = StepType::Sl2Upper;
            s.a = std::exp(eps);
            s.b = 0;
        } else if (family == "conformal") {
            s.type = StepType::Conformal;
            s.i = axis_i;
            s.eps = eps;
        } else if (family == "sl2_lower") {
            s.type = StepType::Sl2Lower;
            s.eps = eps;
        } else {
            throw InvalidArgument("unknown family '" + family + "'");
        }
        try {
            double t = t0;
            Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(x0.data(), c.n);
            step_pull_center(s, t, x);
            const Field acted = apply_step(s, f);
            if (!acted.domain(t, x)) {
                ++skipped;
                continue;
            }
            std::vector<double> row = {t};
            for (int i = 0; i < c.n; ++i) row.push_back(x(i));
            row.push_back(acted.eval(t, x));
            rows.push_back(std::move(row));
        } catch (const Error&) {
            ++skipped;
        }
    }

    const std::string dir = resolve_out_dir(c.out_dir);
    write_text_file(dir + "/orbit.csv", csv_table(c.n, rows));
    Json j = Json::object();
    j["subcommand"] = Json::str("orbit");
    j["n"] = Json::integer(c.n);
    j["m"] = Json::str(inst.m.str());
    j["family"] = Json::str(family);
    j["eps_max"] = Json::real(eps_max);
    j["steps"] = Json::integer(steps);
    j["rows"] = Json::integer(std::int64_t(rows.size()));
    j["skipped"] = Json::integer(skipped);
    j["passed"] = Json::boolean(!rows.empty());
    embed_conventions(j);
    write_report(dir, "orbit.json", j);
    return rows.empty() ? 1 : 0;
}

int run_compact(const CommonOpts& c, int points, std::uint64_t seed, int degree, int index,
                double tol) {
    const Rational m = Rational::parse(c.m_str);
    if (c.n != 1 && c.n != 2)
        throw InvalidArgument("compact closed forms exist for n = 1 and n = 2");

    InducedSection sec;
    if (c.n == 1) {
        sec = stationary_section_1d(c.p, m);
    } else {
        const auto basis = harmonic_basis(2, degree);
        if (index < 0 || index >= int(basis.size()))
            throw InvalidArgument("harmonic index out of range");
        sec = stationary_section_2d(basis[std::size_t(index)], c.p, m);
    }

    Rng rng(seed);
    int evaluated = 0, skipped = 0;
    double max_rel = 0;
    for (int k = 0; k < points; ++k) {
        CompactPoint pt;
        pt.theta = rng.uniform(0.0, 6.283185307179586477);
        Eigen::VectorXd z(c.n + 1);
        for (int i = 0; i <= c.n; ++i) z(i) = rng.normal();
        if (z.norm() < 1e-6) {
            ++skipped;
            continue;
        }
        pt.z = z / z.norm();
        try {
            const double v0 = compact_restrict(sec, pt);
            CompactPoint pt2 = pt;
            pt2.theta += 3.141592653589793238;
            const double v1 = compact_restrict(sec, pt2);
            const double want = (c.p % 2 != 0) ? -v0 : v0;
            max_rel = std::max(max_rel, std::abs(v1 - want) / std::max(1.0, std::abs(v0)));
            ++evaluated;
        } catch (const Error&) {
            ++skipped;
        }
    }

    Json j = Json::object();
    j["subcommand"] = Json::str("compact");
    j["n"] = Json::integer(c.n);
    j["m"] = Json::str(m.str());
    j["p"] = Json::integer(c.p);
    j["points"] = Json::integer(points);
    j["evaluated"] = Json::integer(evaluated);
    j["skipped"] = Json::integer(skipped);
    j["max_parity_rel_err"] = Json::real(max_rel);
    j["tol"] = Json::real(tol);
    const bool passed = evaluated > 0 && max_rel <= tol;
    j["passed"] = Json::boolean(passed);
    embed_conventions(j);
    write_report(resolve_out_dir(c.out_dir), "compact.json", j);
    return passed ? 0 : 1;
}

} // namespace

GroupElement parse_group_element(const std::string& json_text) {
    return ge_from_json(json::parse(json_text));
}

std::string group_element_json_text(const GroupElement& g) { return ge_to_json(g).dump(); }

std::vector<ActionStep> parse_word(const std::string& json_text, int n) {
    const json j = json::parse(json_text);
    if (!j.is_array()) throw InvalidArgument("word must be a json array");
    std::vector<ActionStep> word;
    for (const auto& js : j) word.push_back(step_from_json(js, n));
    return word;
}

int cli_run(int argc, char** argv) {
    CLI::App app{"global symmetry group of the porous medium equation: "
                 "verification jobs with JSON/CSV artifacts"};
    app.require_subcommand(1);

    CommonOpts c;
    std::string field_spec;
    BoxOpts box;
    bool explicit_x_box = false, explicit_tol = false;

    auto add_common = [&](CLI::App* sub, bool with_p = true) {
        sub->add_option("--n", c.n, "spatial dimension");
        sub->add_option("--m", c.m_str, "diffusion exponent, rational p/q");
        if (with_p) sub->add_option("--p", c.p, "character parity (0 or 1)");
        sub->add_option("--out-dir", c.out_dir, "output directory (or PMESYM_OUT_DIR)");
    };

    auto* alg = app.add_subcommand("algebra-check",
                                   "exact bracket verification of the generator algebra");
    bool full = false, parabolic = false;
    add_common(alg, false);
    alg->add_flag("--full", full, "full algebra (needs m = (n-2)/(n+2))");
    alg->add_flag("--parabolic", parabolic, "parabolic subalgebra (default)");

    auto* dec = app.add_subcommand("decompose", "big-cell or Iwasawa factorization");
    std::string input_path, method = "bruhat";
    dec->add_option("--input", input_path, "group element json file")->required();
    dec->add_option("--method", method, "bruhat | iwasawa");
    dec->add_option("--out-dir", c.out_dir, "output directory");

    auto* act = app.add_subcommand("act", "apply a group word to a field over a sample grid");
    std::string config_path;
    act->add_option("--config", config_path, "job json file")->required();
    act->add_option("--out-dir", c.out_dir, "output directory");

    auto* res = app.add_subcommand("residual", "finite-difference equation residual");
    double tol = 1e-6;
    bool skip_bad = false;
    add_common(res);
    res->add_option("--field", field_spec, "stationary:<degree>:<index> | separable:<t0>");
    res->add_option("--t-lo", box.t_lo, "time interval start");
    res->add_option("--t-hi", box.t_hi, "time interval end");
    auto* xlo_opt = res->add_option("--x-lo", box.x_lo, "x-box lower bound (all axes)");
    res->add_option("--x-hi", box.x_hi, "x-box upper bound (all axes)");
    auto* tol_opt = res->add_option("--tol", tol, "pass threshold on max |residual|");
    res->add_option("--spacing", box.h, "stencil spacing h");
    res->add_option("--count", box.count, "number of stencil centers");
    res->add_option("--seed", box.seed, "rng seed");
    res->add_flag("--skip-bad", skip_bad, "drop centers whose stencil leaves the domain");

    auto* ver = app.add_subcommand("verify-symmetry",
                                   "random symmetry words preserve the residual");
    int words = 50, max_len = 4;
    bool negative_control = false;
    add_common(ver);
    ver->add_option("--field", field_spec, "seed solution spec");
    ver->add_option("--words", words, "number of random words");
    ver->add_option("--max-len", max_len, "maximum word length");
    ver->add_option("--t-lo", box.t_lo, "time interval start");
    ver->add_option("--t-hi", box.t_hi, "time interval end");
    ver->add_option("--x-lo", box.x_lo, "x-box lower bound");
    ver->add_option("--x-hi", box.x_hi, "x-box upper bound");
    ver->add_option("--spacing", box.h, "stencil spacing h");
    ver->add_option("--count", box.count, "stencil centers per word");
    ver->add_option("--seed", box.seed, "rng seed");
    ver->add_flag("--negative-control", negative_control,
                  "also force the lower-triangular sl2 flow and expect a large residual");

    auto* orb = app.add_subcommand("orbit", "one-parameter orbit sweep through a point");
    std::string family = "dilation";
    double eps_max = 1.0, t0 = 1.0;
    int steps = 32, axis_i = 1, axis_j = 2;
    std::vector<double> x0;
    add_common(orb);
    orb->add_option("--field", field_spec, "field spec");
    orb->add_option("--family", family,
                    "translation | rotation | dilation | sl2_upper | conformal | sl2_lower");
    orb->add_option("--eps-max", eps_max, "sweep endpoint");
    orb->add_option("--steps", steps, "number of sweep steps");
    orb->add_option("--t0", t0, "base point time");
    orb->add_option("--x0", x0, "base point coordinates")->expected(-1);
    orb->add_option("--i", axis_i, "axis for translation/rotation/conformal");
    orb->add_option("--j", axis_j, "second rotation axis");

    auto* cmp = app.add_subcommand("compact", "parity check in the compact picture");
    int points = 100, degree = 2, index = 0;
    std::uint64_t cseed = 3;
    double ctol = 1e-8;
    add_common(cmp);
    cmp->add_option("--points", points, "number of sample points");
    cmp->add_option("--seed", cseed, "rng seed");
    cmp->add_option("--degree", degree, "harmonic degree for the n=2 section");
    cmp->add_option("--index", index, "harmonic basis index for the n=2 section");
    cmp->add_option("--tol", ctol, "parity tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    explicit_x_box = xlo_opt->count() > 0;
    explicit_tol = tol_opt->count() > 0;

    try {
        if (alg->parsed()) {
            if (full && parabolic) throw InvalidArgument("--full and --parabolic conflict");
            return run_algebra_check(c, full);
        }
        if (dec->parsed()) return run_decompose(input_path, method, c.out_dir);
        if (act->parsed()) return run_act(config_path, c.out_dir);
        if (res->parsed()) {
            if (field_spec.empty()) field_spec = "stationary:1:0";
            const bool separable = field_spec.rfind("separable:", 0) == 0;
            if (separable && !explicit_x_box) {
                box.x_lo = -0.4;
                box.x_hi = 0.4;
            }
            if (separable && !explicit_tol) tol = 1e-3;
            return run_residual(c, field_spec, box, tol, skip_bad);
        }
        if (ver->parsed()) {
            if (field_spec.empty())
                field_spec = c.n == 1 ? "stationary:1:0" : "stationary:2:0";
            return run_verify_symmetry(c, field_spec, box, words, max_len, negative_control);
        }
        if (orb->parsed()) {
            if (field_spec.empty()) field_spec = "stationary:1:0";
            return run_orbit(c, field_spec, family, eps_max, steps, t0, x0, axis_i, axis_j);
        }
        if (cmp->parsed()) return run_compact(c, points, cseed, degree, index, ctol);
        return 2;
    } catch (const OutsideCell& e) {
        std::fprintf(stderr, "check failure: %s\n", e.what());
        return 1;
    } catch (const DomainViolation& e) {
        std::fprintf(stderr, "check failure: %s\n", e.what());
        return 1;
    } catch (const NumericDrift& e) {
        std::fprintf(stderr, "check failure: %s\n", e.what());
        return 1;
    } catch (const RejectedElement& e) {
        std::fprintf(stderr, "rejected: %s\n", e.what());
        return 1;
    } catch (const SingularPoint& e) {
        std::fprintf(stderr, "check failure: %s\n", e.what());
        return 1;
    } catch (const OutsideDomain& e) {
        std::fprintf(stderr, "check failure: %s\n", e.what());
        return 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
}

} // namespace pmesym
