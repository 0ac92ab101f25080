// Copyright 2026 The glt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "glt/glt.hpp"

namespace glt::cli {

namespace {

using nlohmann::json;

struct Common {
    double tol = default_tol;
    std::size_t budget = default_budget;
    std::string format = "json";
};

void add_tol(CLI::App* sub, Common& c)
{
    sub->add_option("--tol", c.tol, "relative zero tolerance")->check(CLI::PositiveNumber);
}

void add_format(CLI::App* sub, Common& c)
{
    sub->add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "human"}));
}

void emit(std::ostream& out, const json& j, const std::optional<std::string>& path = std::nullopt)
{
    if (path) {
        std::ofstream f(*path, std::ios::binary);
        if (!f)
            throw Error(ErrorKind::InvalidArgument, "cannot open '" + *path + "' for writing");
        f << j.dump(2) << '\n';
    } else {
        out << j.dump(2) << '\n';
    }
}

json pivots_json(const PivotSet& p)
{
    json a = json::array();
    for (std::size_t v : p.pivots())
        a.push_back(v + 1);
    return a;
}

int cmd_rotate(const std::string& in, const std::optional<std::string>& out_path,
               const std::optional<std::string>& rot_path, const Common& c, std::ostream& out)
{
    const Matrix beta = io::read_matrix_csv(in);
    const GltRotationResult res = rotate_to_glt(beta, c.tol);
    if (out_path)
        io::write_matrix_csv(*out_path, res.glt);
    if (rot_path)
        io::write_matrix_csv(*rot_path, res.rotation);
    const double err = max_abs_diff(multiply_transposed(res.glt, res.glt), multiply_transposed(beta, beta));
    emit(out, {{"pivots", pivots_json(res.pivots)}, {"max_reconstruction_error", err}});
    return exit_ok;
}

int cmd_normalize(const std::string& in, const std::optional<std::string>& out_path,
                  const std::optional<std::string>& perm_path, const Common& c, std::ostream& out)
{
    const Matrix lam = io::read_matrix_csv(in);
    const auto [ordered, sp] = normalize_to_ordered(lam, c.tol);
    if (out_path)
        io::write_matrix_csv(*out_path, ordered);
    const json spj = io::to_json(sp);
    if (perm_path)
        emit(out, spj, perm_path);
    json summary = spj;
    summary["pivots"] = pivots_json(pivot_rows(sparsity_of(ordered, c.tol)));
    emit(out, summary);
    return exit_ok;
}

int cmd_check(const std::string& pattern_path, const std::optional<std::string>& loading_path, std::size_t s,
              const Common& c, std::ostream& out)
{
    const SparsityPattern pattern = io::read_pattern_csv(pattern_path);
    std::optional<Matrix> loading;
    if (loading_path)
        loading = io::read_matrix_csv(*loading_path);
    const IdentificationReport rep = identification_report(pattern, loading, {s, c.budget, c.tol});
    if (c.format == "human") {
        out << "verdict: " << to_string(rep.verdict) << '\n'
            << "unordered GLT: " << (rep.is_unordered_glt ? "yes" : "no") << '\n'
            << "GLT-AR: " << (rep.glt_ar_ok ? "yes" : "no") << '\n';
        if (rep.counting) {
            out << "CR(r," << s << "): " << (rep.counting->satisfied ? "satisfied" : "violated");
            if (rep.counting->witness) {
                out << " (columns";
                for (std::size_t col : rep.counting->witness->columns)
                    out << ' ' << col + 1;
                out << " have " << rep.counting->witness->nonzero_rows << " nonzero rows)";
            }
            out << '\n';
        } else {
            out << "CR(r," << s << "): budget exceeded\n";
        }
        if (rep.rd_oracle)
            out << "row deletion: " << (*rep.rd_oracle ? "holds" : "fails") << '\n';
    } else {
        emit(out, io::to_json(rep));
    }
    return rep.verdict == Verdict::NotIdentified ? exit_negative : exit_ok;
}

struct HarnessArgs {
    std::string scenario = "dedicated";
    std::uint64_t seed = 0;
    std::size_t draws = 1000;
    double spurious_rate = 1.0;
    double noise = 0.05;
    std::size_t max_spurious = 3;
    std::size_t m = 30;
    std::size_t r = 5;
};

void add_harness(CLI::App* sub, HarnessArgs& h)
{
    sub->add_option("--scenario", h.scenario, "dedicated | block | dense")
        ->check(CLI::IsMember({"dedicated", "block", "dense"}));
    sub->add_option("--seed", h.seed, "random seed");
    sub->add_option("--draws", h.draws, "number of synthetic draws");
    sub->add_option("--spurious-rate", h.spurious_rate, "Poisson mean of spurious columns per draw")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--noise", h.noise, "sd of loading perturbations")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-spurious", h.max_spurious, "cap on spurious columns per draw");
    sub->add_option("--m", h.m, "number of measurements")->check(CLI::PositiveNumber);
    sub->add_option("--r", h.r, "number of factors")->check(CLI::PositiveNumber);
}

std::pair<VarianceDecomposition, DrawArchive> build_archive(const HarnessArgs& h, double tol)
{
    const ScenarioSpec spec{parse_scenario(h.scenario), h.m, h.r, 150, h.seed};
    VarianceDecomposition truth = scenario_truth(spec, tol);
    HarnessConfig cfg;
    cfg.n_draws = h.draws;
    cfg.spurious_rate = h.spurious_rate;
    cfg.noise = h.noise;
    cfg.max_spurious = h.max_spurious;
    cfg.seed = h.seed;
    cfg.scenario = h.scenario;
    DrawArchive archive = synthesize_draw_archive(truth, cfg, tol);
    return {std::move(truth), std::move(archive)};
}

void print_summary_human(std::ostream& out, const PostprocessSummary& s)
{
    out << "draws kept: " << s.draws_kept << " / " << s.draws_total << " (M_V = " << s.m_v << "%)\n";
    if (s.draws_kept > 0) {
        out << "r_hat: " << s.r_hat << " (ordinate " << s.ordinate << ")\n";
        for (const auto& [r, n] : s.r_histogram)
            out << "  r = " << r << ": " << n << '\n';
    }
    if (s.mse_omega)
        out << "MSE_Omega: " << *s.mse_omega << '\n';
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"GLT factor-model identification toolkit", "glt"};
    app.set_version_flag("--version", GLT_VERSION_STRING);
    app.require_subcommand(1);

    Common common;
    std::string in_path;
    std::optional<std::string> out_path;
    std::optional<std::string> aux_path;
    std::optional<std::string> loading_path;
    std::size_t s = 1;
    HarnessArgs harness;
    std::optional<std::string> truth_path;
    std::optional<std::string> idio_path;

    auto* rotate = app.add_subcommand("rotate", "rotate a loading matrix into its GLT representation");
    rotate->add_option("--in", in_path, "loading matrix CSV")->required()->check(CLI::ExistingFile);
    rotate->add_option("--out", out_path, "GLT matrix CSV output");
    rotate->add_option("--rotation", aux_path, "rotation matrix CSV output");
    add_tol(rotate, common);

    auto* normalize = app.add_subcommand("normalize", "sort an unordered GLT matrix into ordered form");
    normalize->add_option("--in", in_path, "loading matrix CSV")->required()->check(CLI::ExistingFile);
    normalize->add_option("--out", out_path, "ordered GLT matrix CSV output");
    normalize->add_option("--perm", aux_path, "signed permutation JSON output");
    add_tol(normalize, common);

    auto* check = app.add_subcommand("check", "variance identification report for a sparsity pattern");
    check->add_option("--pattern", in_path, "0/1 pattern CSV")->required()->check(CLI::ExistingFile);
    check->add_option("--loading", loading_path, "loading matrix CSV for the row-deletion oracle")
        ->check(CLI::ExistingFile);
    check->add_option("--s", s, "rows deleted / counting-rule slack");
    check->add_option("--budget", common.budget, "enumeration budget")->check(CLI::PositiveNumber);
    add_tol(check, common);
    add_format(check, common);

    auto* simulate = app.add_subcommand("simulate", "write a synthetic draw archive for a scenario");
    add_harness(simulate, harness);
    simulate->get_option("--scenario")->required();
    simulate->add_option("--out", out_path, "archive JSON-lines output")->required();
    simulate->add_option("--truth-out", truth_path, "truth loading CSV output");
    simulate->add_option("--truth-idio-out", idio_path, "truth idiosyncratic variances CSV output");
    add_tol(simulate, common);

    auto* post = app.add_subcommand("postprocess", "summarize a draw archive");
    post->add_option("--archive", in_path, "archive JSON-lines")->required()->check(CLI::ExistingFile);
    auto* truth_opt = post->add_option("--truth", truth_path, "truth loading CSV")->check(CLI::ExistingFile);
    auto* idio_opt =
        post->add_option("--truth-idio", idio_path, "truth idiosyncratic variances CSV")->check(CLI::ExistingFile);
    truth_opt->needs(idio_opt);
    idio_opt->needs(truth_opt);
    post->add_option("--out", out_path, "summary JSON output");
    post->add_option("--budget", common.budget, "enumeration budget")->check(CLI::PositiveNumber);
    add_tol(post, common);
    add_format(post, common);

    auto* study = app.add_subcommand("study", "scenario -> synthetic archive -> postprocess summary");
    add_harness(study, harness);
    study->add_option("--out", out_path, "summary JSON output");
    study->add_option("--budget", common.budget, "enumeration budget")->check(CLI::PositiveNumber);
    add_tol(study, common);
    add_format(study, common);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e, out, err);
        err << json{{"error", "Usage"}, {"message", e.what()}}.dump() << '\n';
        return exit_error;
    }

    try {
        if (*rotate)
            return cmd_rotate(in_path, out_path, aux_path, common, out);
        if (*normalize)
            return cmd_normalize(in_path, out_path, aux_path, common, out);
        if (*check)
            return cmd_check(in_path, loading_path, s, common, out);
        if (*simulate) {
            const auto [truth, archive] = build_archive(harness, common.tol);
            io::write_archive(*out_path, archive);
            if (truth_path)
                io::write_matrix_csv(*truth_path, truth.loading());
            if (idio_path)
                io::write_vector_csv(*idio_path, truth.idio());
            emit(out, {{"draws", archive.draws.size()}, {"m", archive.meta.m}, {"k_max", archive.meta.k_max},
                       {"r_true", truth.factors()}});
            return exit_ok;
        }
        if (*post) {
            const DrawArchive archive = io::read_archive(in_path);
            std::optional<VarianceDecomposition> truth;
            if (truth_path)
                truth.emplace(io::read_matrix_csv(*truth_path), io::read_vector_csv(*idio_path));
            const PostprocessSummary sum = postprocess(archive, truth, common.tol, common.budget);
            if (common.format == "human" && !out_path)
                print_summary_human(out, sum);
            else
                emit(out, io::to_json(sum), out_path);
            return exit_ok;
        }
        if (*study) {
            const auto [truth, archive] = build_archive(harness, common.tol);
            const PostprocessSummary sum = postprocess(archive, truth, common.tol, common.budget);
            if (common.format == "human" && !out_path) {
                out << "scenario: " << harness.scenario << ", seed " << harness.seed << '\n';
                print_summary_human(out, sum);
            } else {
                json j = io::to_json(sum);
                j["scenario"] = harness.scenario;
                j["seed"] = harness.seed;
                emit(out, j, out_path);
            }
            return exit_ok;
        }
    } catch (const Error& e) {
        err << json{{"error", std::string(to_string(e.kind()))}, {"message", e.message()}}.dump() << '\n';
        return exit_error;
    } catch (const std::exception& e) {
        err << json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
        return exit_error;
    }
    return exit_error;
}

} // namespace glt::cli
