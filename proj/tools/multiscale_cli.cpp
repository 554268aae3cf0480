#include <CLI11.hpp>
#include <json.hpp>
#include <multiscale.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using njson = nlohmann::ordered_json;

namespace {

struct ContextDeleter {
    void operator()(ms_context *c) const { ms_context_free(c); }
};

// Reads a JSON input argument: a file path, or stdin when the path is "-".
std::string read_input(const std::string &path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::fprintf(stderr, "error: cannot open %s\n", path.c_str());
        std::exit(64);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void collect_rows(const njson &j, const std::string &path,
                  std::vector<std::pair<std::string, std::string>> &rows) {
    auto is_scalar_array = [](const njson &a) {
        if (!a.is_array())
            return false;
        for (const njson &x : a)
            if (x.is_object() || x.is_array())
                return false;
        return true;
    };
    if (j.is_object()) {
        if (j.empty())
            rows.emplace_back(path.empty() ? "/" : path, "{}");
        for (const auto &kv : j.items())
            collect_rows(kv.value(), path + "/" + kv.key(), rows);
    } else if (j.is_array() && !is_scalar_array(j)) {
        if (j.empty())
            rows.emplace_back(path.empty() ? "/" : path, "[]");
        for (size_t i = 0; i < j.size(); ++i)
            collect_rows(j[i], path + "/" + std::to_string(i), rows);
    } else {
        rows.emplace_back(path.empty() ? "/" : path, j.dump());
    }
}

void print_table(const std::string &json_text) {
    njson j = njson::parse(json_text);
    std::vector<std::pair<std::string, std::string>> rows;
    collect_rows(j, "", rows);
    size_t width = 0;
    for (const auto &[k, v] : rows)
        width = std::max(width, k.size());
    for (const auto &[k, v] : rows)
        std::printf("%-*s  %s\n", static_cast<int>(width), k.c_str(), v.c_str());
}

// Prints the result or the context's error; returns the process exit code.
int emit(ms_context *ctx, char *result, bool table) {
    if (!result) {
        int code = ms_last_error_code(ctx);
        std::fprintf(stderr, "error: %s\n", ms_last_error(ctx));
        return code != MS_OK ? code : 70;
    }
    if (table)
        print_table(result);
    else
        std::fputs(result, stdout);
    ms_free(result);
    return 0;
}

bool parse_pair(const std::string &s, int &i, int &j) {
    int used = 0;
    if (std::sscanf(s.c_str(), "%d,%d%n", &i, &j, &used) != 2)
        return false;
    return static_cast<size_t>(used) == s.size();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact computation on moduli of multiscaled lines"};
    app.require_subcommand(1);
    app.fallthrough();
    bool table = false;
    app.add_flag("--table", table, "Aligned rows instead of JSON (human reading only)");

    int n = 0, max_dim = -1;
    bool want_hilbert = false, want_relations = false;
    std::string family_path, point_path, tree_path, rho_path;
    std::string contract, pair, sigma, translate;

    CLI::App *trees = app.add_subcommand("trees", "List the dual level trees on n marks");
    trees->add_option("--n", n, "Number of marks")->required();

    CLI::App *chains = app.add_subcommand("chains", "List the partition chains on n marks");
    chains->add_option("--n", n, "Number of marks")->required();
    chains->add_option("--max-dim", max_dim, "Keep chains whose elements have dim <= K");

    CLI::App *strata = app.add_subcommand("strata", "Stratification poset of the compactified space");
    strata->add_option("--n", n, "Number of marks")->required();

    CLI::App *blowup = app.add_subcommand("blowup-schedule", "Blowup centers stage by stage");
    blowup->add_option("--n", n, "Number of marks")->required();

    CLI::App *limit = app.add_subcommand("limit", "Limit of a Laurent family as t -> 0");
    limit->add_option("--family", family_path, "Family JSON (path or -)")->required();

    CLI::App *pvalidate = app.add_subcommand("point-validate", "Check a chart point and echo it canonically");
    pvalidate->add_option("--point", point_path, "Point JSON (path or -)")->required();

    CLI::App *transition = app.add_subcommand("transition", "Rewrite a point in a coarser chart");
    transition->add_option("--point", point_path, "Point JSON (path or -)")->required();
    transition->add_option("--contract", contract, "Levels to contract, e.g. \"1,3\"")->required();

    CLI::App *period = app.add_subcommand("period", "Period of a pair of marks");
    period->add_option("--point", point_path, "Point JSON (path or -)")->required();
    period->add_option("--pair", pair, "Marks \"i,j\"")->required();

    CLI::App *chow = app.add_subcommand("chow", "Presentation of the augmented Chow ring");
    chow->add_option("--n", n, "Number of marks")->required();
    chow->add_flag("--hilbert", want_hilbert, "Include the Hilbert function");
    chow->add_flag("--relations", want_relations, "Include the quadratic relations");

    CLI::App *levels = app.add_subcommand("level-structures", "Level structures on an unleveled tree");
    levels->add_option("--tree", tree_path, "Rooted tree JSON (path or -)")->required();

    CLI::App *act = app.add_subcommand("act", "Apply a relabeling or a translation to a point");
    act->add_option("--point", point_path, "Point JSON (path or -)")->required();
    CLI::Option *sigma_opt = act->add_option("--sigma", sigma, "Permutation \"s(1),...,s(n)\"");
    CLI::Option *translate_opt = act->add_option("--translate", translate, "Offsets \"a1,...,an\"");
    sigma_opt->excludes(translate_opt);

    CLI::App *xi = app.add_subcommand("xi", "Forget levels: the underlying scaled curve");
    xi->add_option("--point", point_path, "Point JSON (path or -)")->required();

    CLI::App *kappa = app.add_subcommand("kappa", "Collapse the collided marks of a partition");
    kappa->add_option("--point", point_path, "Point JSON (path or -)")->required();
    kappa->add_option("--rho", rho_path, "Partition JSON (path or -)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        std::fprintf(stderr, "error: %s\n", e.what());
        return 64;
    }

    std::unique_ptr<ms_context, ContextDeleter> ctx(ms_context_new());
    if (!ctx) {
        std::fprintf(stderr, "error: out of memory\n");
        return 70;
    }

    if (const char *cap = std::getenv("MULTISCALE_MAX_N")) {
        std::string s(cap);
        size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(s, &used);
        } catch (const std::exception &) {
            used = std::string::npos;
        }
        if (used != s.size() || value < 0) {
            std::fprintf(stderr, "error: MULTISCALE_MAX_N must be a non-negative integer\n");
            return 64;
        }
        ms_context_set_max_n(ctx.get(), value);
    }

    if (app.got_subcommand(trees))
        return emit(ctx.get(), ms_trees(ctx.get(), n), table);
    if (app.got_subcommand(chains))
        return emit(ctx.get(), ms_chains(ctx.get(), n, max_dim), table);
    if (app.got_subcommand(strata))
        return emit(ctx.get(), ms_strata(ctx.get(), n), table);
    if (app.got_subcommand(blowup))
        return emit(ctx.get(), ms_blowup_schedule(ctx.get(), n), table);
    if (app.got_subcommand(limit))
        return emit(ctx.get(), ms_limit(ctx.get(), read_input(family_path).c_str()), table);
    if (app.got_subcommand(pvalidate))
        return emit(ctx.get(), ms_point_validate(ctx.get(), read_input(point_path).c_str()), table);
    if (app.got_subcommand(transition))
        return emit(ctx.get(),
                    ms_transition(ctx.get(), read_input(point_path).c_str(), contract.c_str()), table);
    if (app.got_subcommand(period)) {
        int i = 0, j = 0;
        if (!parse_pair(pair, i, j)) {
            std::fprintf(stderr, "error: --pair expects \"i,j\"\n");
            return 64;
        }
        return emit(ctx.get(), ms_period(ctx.get(), read_input(point_path).c_str(), i, j), table);
    }
    if (app.got_subcommand(chow))
        return emit(ctx.get(), ms_chow(ctx.get(), n, want_hilbert ? 1 : 0, want_relations ? 1 : 0),
                    table);
    if (app.got_subcommand(levels))
        return emit(ctx.get(), ms_level_structures(ctx.get(), read_input(tree_path).c_str()), table);
    if (app.got_subcommand(act)) {
        std::string point = read_input(point_path);
        if (!sigma.empty())
            return emit(ctx.get(), ms_act_sigma(ctx.get(), point.c_str(), sigma.c_str()), table);
        if (!translate.empty())
            return emit(ctx.get(), ms_act_translate(ctx.get(), point.c_str(), translate.c_str()), table);
        std::fprintf(stderr, "error: act needs --sigma or --translate\n");
        return 64;
    }
    if (app.got_subcommand(xi))
        return emit(ctx.get(), ms_xi(ctx.get(), read_input(point_path).c_str()), table);
    if (app.got_subcommand(kappa))
        return emit(ctx.get(),
                    ms_kappa(ctx.get(), read_input(point_path).c_str(),
                             read_input(rho_path).c_str()),
                    table);

    std::fprintf(stderr, "error: no subcommand\n");
    return 64;
}
