#include "gg/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "gg/bijection.hpp"
#include "gg/partition.hpp"
#include "json.hpp"

namespace gg {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path;
    std::optional<int> parallelism;
    std::optional<std::string> emit;
    std::optional<std::string> out;

    std::string id;
    std::optional<int> order;
    std::map<std::string, std::optional<int>> named;
    std::vector<std::string> extra_params;
    std::string level = "quick";
    std::optional<std::string> mutate;

    std::string family;
    int max_n = 20;

    int n = 0;
    bool trace = false;

    std::string report_in;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliConfig resolve_config(const Options& o)
{
    CliConfig cfg;
    std::string path = o.config_path;
    if (path.empty())
        if (const char* env = std::getenv(kConfigEnv))
            path = env;
    if (!path.empty())
        cfg = load_config(path);
    if (o.parallelism)
        cfg.parallelism = *o.parallelism;
    if (o.emit)
        cfg.output_format = parse_format(*o.emit);
    if (o.out)
        cfg.out_path = *o.out;
    if (cfg.parallelism < 1)
        throw UsageError("parallelism must be >= 1");
    if (cfg.default_order2 < 0)
        throw UsageError("default_order2 must be positive");
    return cfg;
}

void write_output(const CliConfig& cfg, const std::string& text, std::ostream& out)
{
    if (!cfg.out_path) {
        out << text;
        return;
    }
    std::ofstream f(*cfg.out_path);
    if (!f)
        throw UsageError("cannot write '" + *cfg.out_path + "'");
    f << text;
}

std::string unknown_id_message(const std::string& id)
{
    std::string msg = "unknown check id '" + id + "'; valid ids:";
    for (const std::string& v : check_ids())
        msg += " " + v;
    return msg;
}

int exit_code(const std::vector<VerificationReport>& reports)
{
    for (const VerificationReport& r : reports)
        if (r.status == CheckStatus::fail)
            return 1;
    return 0;
}

CheckParams collect_params(const Options& o)
{
    CheckParams p;
    for (const auto& [key, value] : o.named)
        if (value)
            p[key] = *value;
    for (const std::string& kv : o.extra_params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw UsageError("--param expects key=value, got '" + kv + "'");
        try {
            p[kv.substr(0, eq)] = std::stoi(kv.substr(eq + 1));
        } catch (const std::logic_error&) {
            throw UsageError("--param value must be an integer: '" + kv + "'");
        }
    }
    return p;
}

int cmd_verify(const Options& o, std::ostream& out)
{
    const CliConfig cfg = resolve_config(o);
    if (!find_check(o.id))
        throw UsageError(unknown_id_message(o.id));
    CheckSpec spec{o.id, collect_params(o), cfg.default_order2, parse_level(o.level)};
    if (o.order) {
        if (*o.order < 0)
            throw UsageError("--order must be nonnegative");
        spec.order2 = 2 * *o.order + 1;
    }
    const std::vector<VerificationReport> reports = {run_check(spec)};
    write_output(cfg, emit(reports, cfg.output_format), out);
    return exit_code(reports);
}

int cmd_verify_all(const Options& o, std::ostream& out)
{
    const CliConfig cfg = resolve_config(o);
    const std::vector<CheckSpec> specs = plan(parse_level(o.level));
    std::vector<VerificationReport> reports = run_checks(specs, cfg.parallelism);
    if (o.mutate) {
        // test hook: corrupt the constant term of one check's first comparison
        if (!find_check(*o.mutate))
            throw UsageError(unknown_id_message(*o.mutate));
        for (std::size_t i = 0; i < specs.size(); ++i)
            if (specs[i].id == *o.mutate)
                reports[i] = run_check(specs[i], Mutation{});
    }
    write_output(cfg, emit(reports, cfg.output_format), out);
    if (cfg.out_path) {
        for (const VerificationReport& r : reports)
            if (r.status == CheckStatus::fail)
                out << "FAIL " << r.id << '\n';
    }
    return exit_code(reports);
}

std::function<std::int64_t(int)> family_counter(const std::string& family)
{
    if (family.size() == 2 && family[0] == 'Q' && family[1] >= '0' && family[1] <= '3') {
        const int i = family[1] - '0';
        return [i](int n) { return count_Q(i, n); };
    }
    if (family == "GG")
        return [](int n) { return count_partitions(n, gollnitz_gordon_filter()); };
    if (family == "S-weighted")
        return [](int n) { return weighted_count(WeightVariant::S, n); };
    if (family == "Sstar-weighted")
        return [](int n) { return weighted_count(WeightVariant::Sstar, n); };
    if (family == "G")
        return count_G;
    if (family == "P")
        return count_P;
    if (family.rfind("residue:", 0) == 0) {
        ResidueFamilyConfig cfg = [&] {
            try {
                return ResidueFamilyConfig::parse(family.substr(8));
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        }();
        return [cfg](int n) { return count_residue_family(cfg, n); };
    }
    throw UsageError("unknown family '" + family +
                     "'; expected Q0..Q3, GG, S-weighted, Sstar-weighted, G, P or residue:<M:r1,r2,..[:D:d1,..]>");
}

int cmd_count(const Options& o, std::ostream& out)
{
    const CliConfig cfg = resolve_config(o);
    if (o.max_n < 0)
        throw UsageError("--max must be nonnegative");
    const auto counter = family_counter(o.family);
    std::vector<std::int64_t> counts;
    for (int n = 0; n <= o.max_n; ++n)
        counts.push_back(counter(n));

    std::ostringstream os;
    switch (cfg.output_format) {
    case OutputFormat::json: {
        nlohmann::json doc;
        doc["family"] = o.family;
        doc["counts"] = counts;
        os << doc.dump(2) << '\n';
        break;
    }
    case OutputFormat::csv:
        os << "n,count\n";
        for (std::size_t n = 0; n < counts.size(); ++n)
            os << n << ',' << counts[n] << '\n';
        break;
    case OutputFormat::text:
        os << o.family << ":";
        for (std::size_t n = 0; n < counts.size(); ++n)
            os << (n ? "," : " ") << counts[n];
        os << '\n';
        break;
    }
    write_output(cfg, os.str(), out);
    return 0;
}

int cmd_bijection(const Options& o, std::ostream& out)
{
    const CliConfig cfg = resolve_config(o);
    if (o.n < 0)
        throw UsageError("--n must be nonnegative");
    std::ostringstream os;
    std::size_t members = 0;
    std::size_t pairs = 0;
    bool ok = true;
    for (const Partition& p : enumerate_members_S(o.n)) {
        ++members;
        const MarkedPartition m = identify(p);
        for (const ChoiceVector& c : all_choices(static_cast<int>(m.marks.size()))) {
            ++pairs;
            const BijectionTrace t = trace_bijection(p, c);
            ok = ok && triple_inverse(t.triple) == std::make_pair(p, c);
            if (o.trace)
                os << format_trace(t) << '\n';
        }
    }
    const std::size_t triples = enumerate_triples(o.n).size();
    ok = ok && triples == pairs;
    os << "n=" << o.n << " members=" << members << " pairs=" << pairs << " triples=" << triples
       << " round-trip=" << (ok ? "ok" : "FAILED") << '\n';
    write_output(cfg, os.str(), out);
    return ok ? 0 : 1;
}

int cmd_report(const Options& o, std::ostream& out)
{
    const CliConfig cfg = resolve_config(o);
    const std::vector<VerificationReport> reports = parse_json(read_file(o.report_in));
    write_output(cfg, emit(reports, cfg.output_format), out);
    return exit_code(reports);
}

}  // namespace

CliConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot read config '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
        CliConfig cfg;
        cfg.default_order2 = doc.value("default_order2", cfg.default_order2);
        cfg.parallelism = doc.value("parallelism", cfg.parallelism);
        if (doc.contains("output_format"))
            cfg.output_format = parse_format(doc["output_format"].get<std::string>());
        if (doc.contains("out_path") && !doc["out_path"].is_null())
            cfg.out_path = doc["out_path"].get<std::string>();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config '" + path + "': " + e.what());
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact verification of Gollnitz-Gordon type q-series and partition identities", "ggverify"};
    app.require_subcommand(1);
    Options o;

    auto common = [&o](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON config file (else $" + std::string(kConfigEnv) + ")");
        sub->add_option("--parallelism", o.parallelism, "worker threads");
        sub->add_option("--emit", o.emit, "json | csv | text");
        sub->add_option("--out", o.out, "write output to a file");
    };

    CLI::App* verify = app.add_subcommand("verify", "run one registry check");
    common(verify);
    verify->add_option("--id", o.id, "check id")->required();
    verify->add_option("--order", o.order, "compare through q^N");
    for (const char* key : {"i", "k", "l", "m", "n", "a", "b", "j"})
        verify->add_option(std::string("--") + key, o.named[key], std::string("parameter ") + key);
    verify->add_option("--param", o.extra_params, "extra key=value parameter");
    verify->add_option("--level", o.level, "default grid size: quick | full");

    CLI::App* all = app.add_subcommand("verify-all", "run every registry check");
    common(all);
    all->add_option("--level", o.level, "quick | full");
    all->add_option("--mutate", o.mutate)->group("");

    CLI::App* count = app.add_subcommand("count", "count a partition family for n = 0..max");
    common(count);
    count->add_option("--family", o.family, "Q0..Q3, GG, S-weighted, Sstar-weighted, G, P, residue:<cfg>")->required();
    count->add_option("--max", o.max_n, "largest n");

    CLI::App* bij = app.add_subcommand("bijection", "run the bijection on every member of S of weight n");
    common(bij);
    bij->add_option("--n", o.n, "weight")->required();
    bij->add_flag("--trace", o.trace, "print every stage");

    CLI::App* report = app.add_subcommand("report", "re-render a saved JSON report");
    common(report);
    report->add_option("input", o.report_in, "report JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify)
            return cmd_verify(o, out);
        if (*all)
            return cmd_verify_all(o, out);
        if (*count)
            return cmd_count(o, out);
        if (*bij)
            return cmd_bijection(o, out);
        return cmd_report(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace gg
