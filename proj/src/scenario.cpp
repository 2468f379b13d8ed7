#include "lde/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <numbers>
#include <ostream>
#include <set>
#include <thread>

#include "lde/analytic.hpp"
#include "lde/csv.hpp"
#include "lde/effham.hpp"
#include "lde/entangle.hpp"
#include "lde/model.hpp"
#include "lde/response.hpp"
#include "lde/version.hpp"

namespace lde {

namespace {

// ---------------------------------------------------------------- config ---

// Strict-schema reader: every key a scenario understands is queried through
// this class, and finish() rejects anything that was never queried. Queried
// values (defaults included) are echoed into `resolved` so outputs can embed
// the fully resolved configuration.
class Ctx {
  public:
    Ctx(const Json& j, std::string path, Json& resolved)
        : j_(j), path_(std::move(path)), resolved_(resolved) {
        if (!j_.is_object())
            throw ConfigError("config error at " + where() + ": expected an object");
    }

    std::string where() const { return path_.empty() ? std::string("/") : path_; }

    bool has(const std::string& key) {
        allowed_.insert(key);
        return j_.contains(key);
    }

    std::int64_t get_int(const std::string& key) {
        require(key);
        return read_int(key);
    }
    std::int64_t get_int_or(const std::string& key, std::int64_t def) {
        if (!has(key)) {
            resolved_[key] = def;
            return def;
        }
        return read_int(key);
    }
    double get_num(const std::string& key) {
        require(key);
        return read_num(key);
    }
    double get_num_or(const std::string& key, double def) {
        if (!has(key)) {
            resolved_[key] = def;
            return def;
        }
        return read_num(key);
    }
    std::string get_str(const std::string& key) {
        require(key);
        return read_str(key);
    }
    std::string get_str_or(const std::string& key, const std::string& def) {
        if (!has(key)) {
            resolved_[key] = def;
            return def;
        }
        return read_str(key);
    }
    bool get_bool_or(const std::string& key, bool def) {
        if (!has(key)) {
            resolved_[key] = def;
            return def;
        }
        const Json& v = j_.at(key);
        if (!v.is_boolean())
            throw ConfigError("config error at " + child(key) + ": expected a boolean");
        resolved_[key] = v.get<bool>();
        return v.get<bool>();
    }

    std::vector<std::int64_t> get_int_array(const std::string& key) {
        require(key);
        const Json& v = j_.at(key);
        if (!v.is_array() || v.empty())
            throw ConfigError("config error at " + child(key) + ": expected a nonempty array");
        std::vector<std::int64_t> out;
        for (const auto& e : v) {
            if (!e.is_number_integer())
                throw ConfigError("config error at " + child(key) + ": expected integers");
            out.push_back(e.get<std::int64_t>());
        }
        resolved_[key] = out;
        return out;
    }
    std::vector<double> get_num_array(const std::string& key) {
        require(key);
        const Json& v = j_.at(key);
        if (!v.is_array() || v.empty())
            throw ConfigError("config error at " + child(key) + ": expected a nonempty array");
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number())
                throw ConfigError("config error at " + child(key) + ": expected numbers");
            out.push_back(e.get<double>());
        }
        resolved_[key] = out;
        return out;
    }

    // child object context (an empty object when the key is absent)
    Ctx object(const std::string& key) {
        allowed_.insert(key);
        resolved_[key] = Json::object();
        if (!j_.contains(key))
            return Ctx(empty_, child(key), resolved_[key]);
        return Ctx(j_.at(key), child(key), resolved_[key]);
    }
    bool has_object(const std::string& key) {
        allowed_.insert(key);
        return j_.contains(key);
    }
    std::vector<Ctx> object_array(const std::string& key) {
        require(key);
        const Json& v = j_.at(key);
        if (!v.is_array() || v.empty())
            throw ConfigError("config error at " + child(key) + ": expected a nonempty array");
        resolved_[key] = Json::array();
        for (std::size_t i = 0; i < v.size(); ++i)
            resolved_[key].push_back(Json::object());
        std::vector<Ctx> out;
        out.reserve(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            out.emplace_back(v.at(i), child(key) + "/" + std::to_string(i),
                             resolved_[key].at(i));
        return out;
    }

    void finish() const {
        for (const auto& item : j_.items())
            if (!allowed_.contains(item.key())) {
                std::string msg = "config error at " + where() + ": unknown key '" + item.key() +
                                  "'; allowed keys:";
                for (const auto& k : allowed_)
                    msg += " " + k;
                throw ConfigError(msg);
            }
    }

  private:
    void require(const std::string& key) {
        allowed_.insert(key);
        if (!j_.contains(key))
            throw ConfigError("config error at " + where() + ": missing required key '" + key +
                              "'");
    }
    std::string child(const std::string& key) const { return path_ + "/" + key; }
    std::int64_t read_int(const std::string& key) {
        const Json& v = j_.at(key);
        if (!v.is_number_integer())
            throw ConfigError("config error at " + child(key) + ": expected an integer");
        resolved_[key] = v.get<std::int64_t>();
        return v.get<std::int64_t>();
    }
    double read_num(const std::string& key) {
        const Json& v = j_.at(key);
        if (!v.is_number())
            throw ConfigError("config error at " + child(key) + ": expected a number");
        resolved_[key] = v.get<double>();
        return v.get<double>();
    }
    std::string read_str(const std::string& key) {
        const Json& v = j_.at(key);
        if (!v.is_string())
            throw ConfigError("config error at " + child(key) + ": expected a string");
        resolved_[key] = v.get<std::string>();
        return v.get<std::string>();
    }

    const Json& j_;
    std::string path_;
    Json& resolved_;
    std::set<std::string> allowed_;
    inline static const Json empty_ = Json::object();
};

Boundary parse_boundary(const std::string& s, const std::string& at) {
    if (s == "open")
        return Boundary::open;
    if (s == "periodic")
        return Boundary::periodic;
    throw ConfigError("config error at " + at + ": boundary must be 'open' or 'periodic'");
}

ChainModel parse_model(const std::string& s, const std::string& at) {
    if (s == "heisenberg_spin_half")
        return ChainModel::heisenberg_spin_half;
    if (s == "bilinear_biquadratic_spin1")
        return ChainModel::bilinear_biquadratic_spin1;
    throw ConfigError("config error at " + at +
                      ": model must be 'heisenberg_spin_half' or 'bilinear_biquadratic_spin1'");
}

ProbeNorm parse_norm(const std::string& s, const std::string& at) {
    if (s == "pauli")
        return ProbeNorm::pauli;
    if (s == "spin_half")
        return ProbeNorm::spin_half;
    throw ConfigError("config error at " + at + ": probe_norm must be 'pauli' or 'spin_half'");
}

SpinOp parse_hermitian_op(const std::string& s, const std::string& at) {
    if (s == "Sx")
        return SpinOp::Sx;
    if (s == "Sy")
        return SpinOp::Sy;
    if (s == "Sz")
        return SpinOp::Sz;
    throw ConfigError("config error at " + at + ": operator must be 'Sx', 'Sy' or 'Sz'");
}

SolverOptions parse_tolerances(Ctx& root) {
    Ctx t = root.object("tolerances");
    SolverOptions opts;
    opts.cg_tol = t.get_num_or("cg_tol", opts.cg_tol);
    opts.lanczos_tol = t.get_num_or("lanczos_tol", opts.lanczos_tol);
    opts.dense_cap = t.get_int_or("dense_cap", opts.dense_cap);
    t.finish();
    return opts;
}

struct OutputSpec {
    std::string path;
    std::string format; // "csv" or "json"
};

OutputSpec parse_output(Ctx& root, const std::string& scenario) {
    Ctx out = root.object("output");
    OutputSpec spec;
    spec.format = out.get_str_or("format", "csv");
    if (spec.format != "csv" && spec.format != "json")
        throw ConfigError("config error at /output/format: must be 'csv' or 'json'");
    spec.path = out.get_str_or("path", scenario + "." + spec.format);
    out.finish();
    return spec;
}

ChainSpec parse_chain(Ctx& root, ChainModel default_model, bool allow_model,
                      Boundary default_boundary) {
    Ctx c = root.object("chain");
    ChainSpec spec;
    if (allow_model)
        spec.model = parse_model(
            c.get_str_or("model", default_model == ChainModel::heisenberg_spin_half
                                      ? "heisenberg_spin_half"
                                      : "bilinear_biquadratic_spin1"),
            c.where() + "/model");
    else
        spec.model = default_model;
    spec.length = static_cast<int>(c.get_int("length"));
    spec.boundary = parse_boundary(
        c.get_str_or("boundary", default_boundary == Boundary::open ? "open" : "periodic"),
        c.where() + "/boundary");
    if (spec.model == ChainModel::bilinear_biquadratic_spin1)
        spec.biquadratic_beta = c.get_num_or("biquadratic_beta", 1.0 / 3.0);
    c.finish();
    spec.validate();
    return spec;
}

ProbeSpec parse_probes(Ctx& root, int chain_length) {
    Ctx p = root.object("probes");
    const int site_m = static_cast<int>(p.get_int("site_m"));
    const int site_n = static_cast<int>(p.get_int("site_n"));
    const ProbeNorm norm =
        parse_norm(p.get_str_or("probe_norm", "pauli"), p.where() + "/probe_norm");

    ProbeSpec spec;
    if (p.has("terms")) {
        if (p.has("j_a") || p.has("j_b"))
            throw ConfigError("config error at " + p.where() +
                              ": give either explicit 'terms' or j_a/j_b, not both");
        spec.site_m = site_m;
        spec.site_n = site_n;
        spec.probe_norm = norm;
        for (Ctx& t : p.object_array("terms")) {
            CouplingTerm term;
            term.chain_site = static_cast<int>(t.get_int("site"));
            term.chain_op = parse_hermitian_op(t.get_str("chain_op"), t.where() + "/chain_op");
            const std::string probe_id = t.get_str("probe");
            if (probe_id != "a" && probe_id != "b")
                throw ConfigError("config error at " + t.where() + "/probe: must be 'a' or 'b'");
            term.probe = probe_id[0];
            term.probe_op = parse_hermitian_op(t.get_str("probe_op"), t.where() + "/probe_op");
            term.strength = t.get_num("strength");
            t.finish();
            spec.couplings.push_back(term);
        }
    } else {
        const double j_a = p.get_num_or("j_a", 1.0);
        const double j_b = p.get_num_or("j_b", 1.0);
        spec = heisenberg_probes(site_m, site_n, j_a, j_b, norm);
    }
    p.finish();
    spec.validate(chain_length);
    return spec;
}

void progress_line(const ScenarioOptions& opts, const std::string& scenario,
                   const std::string& what) {
    if (opts.progress)
        (*opts.progress) << "lde: scenario=" << scenario << " " << what << "\n" << std::flush;
}

template <typename Fn>
void parallel_map(std::size_t count, int threads, Fn&& fn) {
    const int n = std::max(1, threads);
    if (n == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n));
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < n; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

// ------------------------------------------------------------- ED sweeps ---

std::optional<double> ground_sector(const ChainSpec& chain) {
    if (chain.model == ChainModel::heisenberg_spin_half && chain.length % 2 != 0)
        return 0.5; // odd chains: the ground doublet member with Sz = +1/2
    return 0.0;
}

struct EdRow {
    int separation;
    int site_m;
    int site_n;
    double chi0;
    std::string method;
    double residual;
};

struct EdSweepResult {
    std::vector<EdRow> rows;
    double ground_energy = 0.0;
    double gap = 0.0;
};

EdSweepResult ed_chi0_sweep(const ChainSpec& chain, const std::vector<std::int64_t>& separations,
                            const std::string& method, const SolverOptions& sopts,
                            const ScenarioOptions& opts, const std::string& scenario) {
    const SpinBasis basis = build_basis(chain.length, chain.local_spin(), ground_sector(chain));
    progress_line(opts, scenario, "phase=hamiltonian dim=" + std::to_string(basis.dimension()));
    const SparseOperator h = build_chain_hamiltonian(chain, basis);

    std::vector<int> sites{1};
    for (auto r : separations)
        if (std::find(sites.begin(), sites.end(), static_cast<int>(1 + r)) == sites.end())
            sites.push_back(static_cast<int>(1 + r));
    std::vector<SparseOperator> ops;
    ops.reserve(sites.size());
    for (int s : sites)
        ops.push_back(site_operator(basis, s, SpinOp::Sz));
    auto op_slot = [&sites](int site) {
        return static_cast<int>(std::find(sites.begin(), sites.end(), site) - sites.begin());
    };

    EdSweepResult result;
    const bool want_lehmann = method == "lehmann" || method == "both";
    const bool want_cv = method == "correction_vector" || method == "both";

    std::vector<EdRow> lehmann_rows, cv_rows;
    if (want_lehmann) {
        progress_line(opts, scenario, "phase=dense_spectrum");
        const SpectrumSlice spectrum = dense_spectrum(h, sopts);
        const GroundState gs = ground_state_from_spectrum(spectrum, sopts);
        result.ground_energy = gs.energy;
        result.gap = gs.gap;
        for (auto r : separations) {
            const ResponseValue rv = chi0_lehmann(spectrum, ops[static_cast<std::size_t>(op_slot(1))],
                                                  ops[static_cast<std::size_t>(op_slot(
                                                      static_cast<int>(1 + r)))],
                                                  sopts);
            lehmann_rows.push_back({static_cast<int>(r), 1, static_cast<int>(1 + r), rv.value,
                                    "lehmann", rv.residual});
        }
    }
    if (want_cv) {
        progress_line(opts, scenario, "phase=lanczos");
        const GroundState gs = lanczos_ground(h, sopts);
        result.ground_energy = gs.energy;
        result.gap = gs.gap;
        progress_line(opts, scenario,
                      "phase=correction_vectors count=" + std::to_string(ops.size()));
        double max_resid = 0.0;
        const Eigen::MatrixXd chi = chi0_correction_vector_matrix(h, gs, ops, sopts, &max_resid);
        for (auto r : separations)
            cv_rows.push_back({static_cast<int>(r), 1, static_cast<int>(1 + r),
                               chi(op_slot(1), op_slot(static_cast<int>(1 + r))),
                               "correction_vector", max_resid});
    }
    for (std::size_t i = 0; i < separations.size(); ++i) {
        if (want_lehmann)
            result.rows.push_back(lehmann_rows[i]);
        if (want_cv)
            result.rows.push_back(cv_rows[i]);
    }
    return result;
}

// ------------------------------------------------------------- scenarios ---

struct ScenarioOutput {
    std::vector<std::string> header;
    std::vector<std::vector<CsvCell>> rows;
    Json summary = Json::object();
};

ScenarioOutput run_ed_response(Ctx& root, const ChainSpec& chain, const SolverOptions& sopts,
                               const ScenarioOptions& opts, const std::string& scenario,
                               bool dry) {
    Ctx sweep = root.object("sweep");
    const std::vector<std::int64_t> separations = sweep.get_int_array("separations");
    sweep.finish();
    for (auto r : separations)
        if (r < 1 || r >= chain.length)
            throw ConfigError("config error at /sweep/separations: separation " +
                              std::to_string(r) + " outside 1..L-1");
    const std::string method = root.get_str_or("method", "correction_vector");
    if (method != "lehmann" && method != "correction_vector" && method != "both")
        throw ConfigError(
            "config error at /method: must be 'lehmann', 'correction_vector' or 'both'");
    const bool has_jp = root.has("probe_strength");
    const double jp = root.get_num_or("probe_strength", 0.0);

    ScenarioOutput out;
    out.header = {"r", "site_m", "site_n", "chi0", "method", "residual"};
    if (dry)
        return out;

    const EdSweepResult sweep_result =
        ed_chi0_sweep(chain, separations, method, sopts, opts, scenario);
    for (const auto& row : sweep_result.rows)
        out.rows.push_back({static_cast<std::int64_t>(row.separation),
                            static_cast<std::int64_t>(row.site_m),
                            static_cast<std::int64_t>(row.site_n), row.chi0, row.method,
                            row.residual});
    out.summary["ground_energy"] = sweep_result.ground_energy;
    out.summary["gap"] = sweep_result.gap;
    if (has_jp) {
        double max_chi = 0.0;
        for (const auto& row : sweep_result.rows)
            max_chi = std::max(max_chi, std::abs(row.chi0));
        out.summary["validity"] = perturbative_validity(jp, max_chi, sweep_result.gap).to_json();
        // guideline from the validity analysis: J_p << J / sqrt(L)
        out.summary["validity"]["jp_sqrt_l"] = jp * std::sqrt(static_cast<double>(chain.length));
    }
    return out;
}

ScenarioOutput run_heisenberg_cft(Ctx& root, const SolverOptions& sopts,
                                  const ScenarioOptions& opts, bool dry) {
    const int length = static_cast<int>(root.get_int("length"));
    const std::vector<std::int64_t> separations = root.get_int_array("separations");
    double amplitude = root.get_num_or("amplitude", 1.0);
    const double v_f = root.get_num_or("fermi_velocity", std::numbers::pi / 2.0);
    for (auto r : separations)
        CftParams{amplitude > 0 ? amplitude : 1.0, v_f, length, static_cast<int>(r)}.validate();

    int fit_reference = 0;
    if (root.has_object("fit_amplitude")) {
        Ctx fit = root.object("fit_amplitude");
        fit_reference = static_cast<int>(fit.get_int("reference_separation"));
        fit.finish();
        CftParams{1.0, v_f, length, fit_reference}.validate();
    }

    ScenarioOutput out;
    out.header = {"r", "r_over_l", "chi0_cft", "amplitude", "fermi_velocity"};
    if (dry)
        return out;

    if (fit_reference > 0) {
        ChainSpec chain;
        chain.model = ChainModel::heisenberg_spin_half;
        chain.length = length;
        chain.boundary = Boundary::periodic;
        progress_line(opts, "heisenberg_cft", "phase=ed_fit r=" + std::to_string(fit_reference));
        const EdSweepResult ed = ed_chi0_sweep(chain, {fit_reference}, "correction_vector", sopts,
                                               opts, "heisenberg_cft");
        const double predicted = cft_chi0(CftParams{1.0, v_f, length, fit_reference});
        if (std::abs(predicted) < 1e-300)
            throw Error("heisenberg_cft: cannot fit the amplitude where the formula vanishes");
        amplitude = ed.rows[0].chi0 / predicted;
        out.summary["fitted_amplitude"] = amplitude;
        out.summary["fit_reference_separation"] = fit_reference;
        out.summary["fit_reference_chi0_ed"] = ed.rows[0].chi0;
    }

    std::vector<std::vector<CsvCell>> rows(separations.size());
    parallel_map(separations.size(), opts.threads, [&](std::size_t i) {
        const int r = static_cast<int>(separations[i]);
        const double value = cft_chi0(CftParams{amplitude, v_f, length, r});
        rows[i] = {static_cast<std::int64_t>(r), static_cast<double>(r) / length, value,
                   amplitude, v_f};
    });
    out.rows = std::move(rows);
    return out;
}

ScenarioOutput run_aklt_sma(Ctx& root, const ScenarioOptions& opts, bool dry) {
    const std::vector<std::int64_t> separations = root.get_int_array("separations");
    for (auto r : separations)
        if (r < 1)
            throw ConfigError("config error at /separations: separation must be >= 1");
    ScenarioOutput out;
    out.header = {"r", "chi0_closed", "chi0_integral", "abs_diff", "chi0_printed_form"};
    if (dry)
        return out;
    std::vector<std::vector<CsvCell>> rows(separations.size());
    parallel_map(separations.size(), opts.threads, [&](std::size_t i) {
        const int r = static_cast<int>(separations[i]);
        const double closed = aklt_chi0_closed(r);
        const double integral = aklt_chi0_integral(r);
        rows[i] = {static_cast<std::int64_t>(r), closed, integral, std::abs(closed - integral),
                   aklt_chi0_integral_printed_form(r)};
    });
    out.rows = std::move(rows);
    out.summary["correlation_length"] = aklt_correlation_length();
    return out;
}

ScenarioOutput run_effective_hamiltonian(Ctx& root, const SolverOptions& sopts,
                                         const ScenarioOptions& opts, bool dry) {
    const ChainSpec chain =
        parse_chain(root, ChainModel::heisenberg_spin_half, true, Boundary::open);
    const ProbeSpec probes = parse_probes(root, chain.length);
    const std::string method = root.get_str_or("method", "correction_vector");
    if (method != "lehmann" && method != "correction_vector")
        throw ConfigError("config error at /method: must be 'lehmann' or 'correction_vector'");

    ScenarioOutput out;
    out.header = {"j_ab",          "scalar_shift",   "local_a_norm", "local_b_norm",
                  "k_anisotropy",  "gap",            "ground_energy", "validity_ratio",
                  "verdict"};
    if (dry)
        return out;

    EffHamOptions eopts;
    eopts.solver = sopts;
    eopts.method =
        method == "lehmann" ? ResponseMethod::lehmann : ResponseMethod::correction_vector;
    progress_line(opts, "effective_hamiltonian", "phase=build");
    const EffectiveProbeHamiltonian eff = build_effective_hamiltonian(chain, probes, eopts);

    const double max_k = eff.nonlocal_coefficients.size() == 0
                             ? 0.0
                             : eff.nonlocal_coefficients.cwiseAbs().maxCoeff();
    ValidityReport validity;
    validity.gap = eff.gap;
    validity.max_coupling = eff.isotropic_coupling ? std::abs(*eff.isotropic_coupling) : max_k;
    validity.ratio = eff.gap > 0.0 ? validity.max_coupling / eff.gap : INFINITY;
    validity.verdict = validity.ratio < 0.1   ? Verdict::ok
                       : validity.ratio < 0.5 ? Verdict::marginal
                                              : Verdict::invalid;

    out.rows.push_back({eff.isotropic_coupling ? *eff.isotropic_coupling : NAN, eff.scalar_part,
                        eff.local_a_norm(), eff.local_b_norm(), eff.anisotropy(), eff.gap,
                        eff.ground_energy, validity.ratio, verdict_label(validity.verdict)});

    Json k_matrix = Json::array();
    for (int u = 0; u < eff.nonlocal_coefficients.rows(); ++u) {
        Json row = Json::array();
        for (int v = 0; v < eff.nonlocal_coefficients.cols(); ++v)
            row.push_back(eff.nonlocal_coefficients(u, v));
        k_matrix.push_back(row);
    }
    out.summary["nonlocal_coefficients"] = k_matrix;
    if (eff.isotropic_coupling)
        out.summary["j_ab"] = *eff.isotropic_coupling;
    out.summary["validity"] = validity.to_json();
    out.summary["method"] = method;
    out.summary["residual"] = eff.residual;
    return out;
}

ScenarioOutput run_perturbation_validation(Ctx& root, const SolverOptions& sopts,
                                           const ScenarioOptions& opts, bool dry) {
    const ChainSpec chain =
        parse_chain(root, ChainModel::heisenberg_spin_half, true, Boundary::open);
    const ProbeSpec probes = parse_probes(root, chain.length);
    const std::vector<double> strengths = root.get_num_array("probe_strengths");

    ScenarioOutput out;
    out.header = {"j_p",          "exact_splitting", "predicted_splitting",
                  "relative_deviation", "singlet_weight",  "validity_ratio",
                  "verdict"};
    if (dry)
        return out;

    EffHamOptions eopts;
    eopts.solver = sopts;
    progress_line(opts, "perturbation_validation", "phase=validate");
    const EffectiveProbeHamiltonian eff = build_effective_hamiltonian(chain, probes, eopts);
    const std::vector<ValidationRow> rows =
        validate_against_exact(chain, probes, strengths, eopts);

    Verdict worst = Verdict::ok;
    for (const auto& row : rows) {
        const ValidityReport v = perturbative_validity(
            row.probe_strength, eff.isotropic_coupling ? std::abs(*eff.isotropic_coupling) : 0.0,
            eff.gap);
        worst = std::max(worst, v.verdict);
        out.rows.push_back({row.probe_strength, row.exact_splitting, row.predicted_splitting,
                            row.relative_deviation, row.singlet_weight, v.ratio,
                            verdict_label(v.verdict)});
    }
    out.summary["j_ab_unit"] = eff.isotropic_coupling ? *eff.isotropic_coupling : NAN;
    out.summary["gap"] = eff.gap;
    out.summary["worst_verdict"] = verdict_label(worst);
    return out;
}

ScenarioOutput run_thermal_scan(Ctx& root, const ScenarioOptions& opts, bool dry) {
    const double coupling = root.get_num("coupling_j");
    std::vector<double> betas;
    if (root.has("betas")) {
        betas = root.get_num_array("betas");
    } else {
        Ctx grid = root.object("beta_grid");
        const double lo = grid.get_num("min");
        const double hi = grid.get_num("max");
        const std::int64_t count = grid.get_int("count");
        grid.finish();
        if (count < 2 || hi <= lo)
            throw ConfigError("config error at /beta_grid: need count >= 2 and max > min");
        for (std::int64_t i = 0; i < count; ++i)
            betas.push_back(lo +
                            (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    for (double b : betas)
        if (!(b >= 0.0) || !std::isfinite(b))
            throw ConfigError("config error: inverse temperatures must be finite and >= 0");
    const bool with_threshold = root.get_bool_or("compute_threshold", true);

    ScenarioOutput out;
    out.header = {"beta", "negativity"};
    if (dry)
        return out;

    const DenseMatrix h = heisenberg_pair_matrix(coupling);
    std::vector<std::vector<CsvCell>> rows(betas.size());
    parallel_map(betas.size(), opts.threads, [&](std::size_t i) {
        rows[i] = {betas[i], negativity(thermal_state(h, betas[i]))};
    });
    out.rows = std::move(rows);
    out.summary["coupling_j"] = coupling;
    if (with_threshold) {
        try {
            out.summary["threshold_beta"] = entanglement_threshold(h);
            out.summary["threshold_beta_times_j"] =
                out.summary["threshold_beta"].get<double>() * coupling;
        } catch (const NeverEntangled&) {
            out.summary["threshold_beta"] = nullptr;
        }
    }
    return out;
}

ScenarioOutput dispatch(const std::string& scenario, Ctx& root, const SolverOptions& sopts,
                        const ScenarioOptions& opts, bool dry) {
    if (scenario == "heisenberg_ed") {
        const ChainSpec chain =
            parse_chain(root, ChainModel::heisenberg_spin_half, false, Boundary::periodic);
        return run_ed_response(root, chain, sopts, opts, scenario, dry);
    }
    if (scenario == "aklt_ed") {
        const ChainSpec chain =
            parse_chain(root, ChainModel::bilinear_biquadratic_spin1, false, Boundary::periodic);
        return run_ed_response(root, chain, sopts, opts, scenario, dry);
    }
    if (scenario == "heisenberg_cft")
        return run_heisenberg_cft(root, sopts, opts, dry);
    if (scenario == "aklt_sma")
        return run_aklt_sma(root, opts, dry);
    if (scenario == "effective_hamiltonian")
        return run_effective_hamiltonian(root, sopts, opts, dry);
    if (scenario == "perturbation_validation")
        return run_perturbation_validation(root, sopts, opts, dry);
    if (scenario == "thermal_scan")
        return run_thermal_scan(root, opts, dry);
    std::string msg =
        "config error at /scenario: unknown scenario '" + scenario + "'; allowed scenarios:";
    for (const auto& name : scenario_names())
        msg += " " + name;
    throw ConfigError(msg);
}

} // namespace

// ------------------------------------------------------------- interface ---

std::string verdict_label(Verdict v) {
    switch (v) {
    case Verdict::ok: return "ok";
    case Verdict::marginal: return "marginal";
    case Verdict::invalid: return "invalid";
    }
    return "?";
}

Json ValidityReport::to_json() const {
    Json j;
    j["gap"] = gap;
    j["max_coupling"] = max_coupling;
    j["ratio"] = ratio;
    j["verdict"] = verdict_label(verdict);
    return j;
}

ValidityReport perturbative_validity(double probe_strength, double chi0, double gap) {
    if (!(gap > 0.0))
        throw InvalidGap("perturbative_validity: gap must be positive");
    ValidityReport report;
    report.gap = gap;
    report.max_coupling = probe_strength * probe_strength * std::abs(chi0);
    report.ratio = report.max_coupling / gap;
    report.verdict = report.ratio < 0.1   ? Verdict::ok
                     : report.ratio < 0.5 ? Verdict::marginal
                                          : Verdict::invalid;
    return report;
}

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {
        "heisenberg_ed",         "heisenberg_cft",          "aklt_sma",    "aklt_ed",
        "effective_hamiltonian", "perturbation_validation", "thermal_scan"};
    return names;
}

Json validate_config(const Json& config) {
    Json resolved = Json::object();
    Ctx root(config, "", resolved);
    const std::string scenario = root.get_str("scenario");
    const SolverOptions sopts = parse_tolerances(root);
    parse_output(root, scenario);
    ScenarioOptions dry_opts;
    dispatch(scenario, root, sopts, dry_opts, /*dry=*/true);
    root.finish();
    return resolved;
}

Json validate_config_text(const std::string& text) {
    Json parsed;
    try {
        parsed = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("config parse error at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what());
    }
    return validate_config(parsed);
}

RunReport run_scenario(const Json& config, const ScenarioOptions& opts) {
    Json resolved = Json::object();
    Ctx root(config, "", resolved);
    const std::string scenario = root.get_str("scenario");
    const SolverOptions sopts = parse_tolerances(root);
    const OutputSpec output = parse_output(root, scenario);

    ScenarioOutput result = dispatch(scenario, root, sopts, opts, /*dry=*/false);
    root.finish();

    if (opts.strict) {
        if (result.summary.contains("validity") &&
            result.summary["validity"]["verdict"] == "invalid")
            throw Error("strict mode: validity verdict is 'invalid'");
        if (result.summary.contains("worst_verdict") &&
            result.summary["worst_verdict"] == "invalid")
            throw Error("strict mode: validity verdict is 'invalid'");
    }

    const std::filesystem::path out_path = opts.output_dir / output.path;
    if (out_path.has_parent_path())
        std::filesystem::create_directories(out_path.parent_path());

    std::string document;
    if (output.format == "csv") {
        CsvWriter writer(result.header);
        for (auto& row : result.rows)
            writer.add_row(std::move(row));
        document = writer.render(std::string("lde ") + version_string);
    } else {
        Json doc;
        doc["version"] = version_string;
        doc["scenario"] = scenario;
        doc["config"] = resolved;
        doc["columns"] = result.header;
        Json rows = Json::array();
        for (const auto& row : result.rows) {
            Json jrow = Json::array();
            for (const auto& cell : row) {
                if (const auto* i = std::get_if<std::int64_t>(&cell))
                    jrow.push_back(*i);
                else if (const auto* d = std::get_if<double>(&cell))
                    jrow.push_back(*d);
                else
                    jrow.push_back(std::get<std::string>(cell));
            }
            rows.push_back(jrow);
        }
        doc["rows"] = rows;
        doc["summary"] = result.summary;
        document = doc.dump(2) + "\n";
    }

    std::ofstream file(out_path, std::ios::binary);
    if (!file)
        throw Error("cannot open output file " + out_path.string());
    file << document;
    file.close();

    progress_line(opts, scenario,
                  "phase=done rows=" + std::to_string(result.rows.size()) +
                      " output=" + out_path.string());

    RunReport report;
    report.output_file = out_path;
    report.rows = result.rows.size();
    report.summary = std::move(result.summary);
    return report;
}

RunReport run_scenario_file(const std::filesystem::path& config_path,
                            const ScenarioOptions& opts) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read config file " + config_path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Json parsed;
    try {
        parsed = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("config parse error in " + config_path.string() + " at line " +
                          std::to_string(line) + ", column " + std::to_string(col) + ": " +
                          e.what());
    }
    return run_scenario(parsed, opts);
}

} // namespace lde
