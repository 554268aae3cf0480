#include "multiscale.h"

#include "multiscale/charts.hpp"
#include "multiscale/chow.hpp"
#include "multiscale/degeneration.hpp"
#include "multiscale/errors.hpp"
#include "multiscale/json_io.hpp"
#include "multiscale/leveltrees.hpp"
#include "multiscale/partitions.hpp"
#include "multiscale/strata.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

struct ms_context {
    std::string error;
    int code = MS_OK;
};

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

char *copy_out(const std::string &s) {
    char *buf = static_cast<char *>(std::malloc(s.size() + 1));
    if (!buf)
        throw std::bad_alloc();
    std::memcpy(buf, s.c_str(), s.size() + 1);
    return buf;
}

template <typename F> char *guarded(ms_context *ctx, F &&body) {
    if (!ctx)
        return nullptr;
    ctx->error.clear();
    ctx->code = MS_OK;
    try {
        return copy_out(body());
    } catch (const usage_error &e) {
        ctx->error = e.what();
        ctx->code = MS_ERR_USAGE;
    } catch (const ms::size_guard_error &e) {
        ctx->error = e.what();
        ctx->code = MS_ERR_SIZE;
    } catch (const ms::validation_error &e) {
        ctx->error = e.what();
        ctx->code = MS_ERR_VALIDATION;
    } catch (const ms::ojson::exception &e) {
        ctx->error = e.what();
        ctx->code = MS_ERR_VALIDATION;
    } catch (const std::exception &e) {
        ctx->error = e.what();
        ctx->code = MS_ERR_INTERNAL;
    }
    return nullptr;
}

ms::ojson parse_json(const char *text, const char *what) {
    if (!text)
        throw usage_error(std::string(what) + ": missing argument");
    return ms::ojson::parse(text);
}

std::vector<std::string> split_csv(const char *text, const char *what) {
    if (!text)
        throw usage_error(std::string(what) + ": missing argument");
    std::vector<std::string> parts;
    std::string cur;
    for (const char *p = text;; ++p) {
        if (*p == ',' || *p == '\0') {
            size_t a = cur.find_first_not_of(" \t");
            size_t b = cur.find_last_not_of(" \t");
            if (a == std::string::npos)
                throw usage_error(std::string(what) + ": empty entry in list");
            parts.push_back(cur.substr(a, b - a + 1));
            cur.clear();
            if (*p == '\0')
                break;
        } else {
            cur.push_back(*p);
        }
    }
    return parts;
}

std::vector<int> parse_csv_ints(const char *text, const char *what) {
    std::vector<int> out;
    for (const std::string &tok : split_csv(text, what)) {
        size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception &) {
            throw usage_error(std::string(what) + ": '" + tok + "' is not an integer");
        }
        if (used != tok.size())
            throw usage_error(std::string(what) + ": '" + tok + "' is not an integer");
        out.push_back(v);
    }
    return out;
}

std::vector<ms::Rat> parse_csv_rats(const char *text, const char *what) {
    std::vector<ms::Rat> out;
    for (const std::string &tok : split_csv(text, what)) {
        try {
            out.push_back(ms::rat_from_string(tok));
        } catch (const ms::validation_error &) {
            throw usage_error(std::string(what) + ": '" + tok + "' is not a rational");
        }
    }
    return out;
}

ms::ChartPoint parse_point(const char *text) {
    return ms::point_from_json(parse_json(text, "point"));
}

} // namespace

extern "C" {

ms_context *ms_context_new(void) { return new (std::nothrow) ms_context; }

void ms_context_free(ms_context *ctx) { delete ctx; }

void ms_context_set_max_n(ms_context *, int max_n) {
    ms::max_n_override().store(max_n > 0 ? max_n : 0);
}

const char *ms_last_error(const ms_context *ctx) { return ctx ? ctx->error.c_str() : ""; }

int ms_last_error_code(const ms_context *ctx) { return ctx ? ctx->code : MS_OK; }

void ms_free(char *s) { std::free(s); }

char *ms_trees(ms_context *ctx, int n) {
    return guarded(ctx, [&] {
        ms::ojson out = ms::ojson::array();
        for (const ms::LevelTree &t : ms::enumerate_trees(n))
            out.push_back(ms::tree_to_json(t));
        return ms::dump_json(out);
    });
}

char *ms_chains(ms_context *ctx, int n, int max_dim) {
    return guarded(ctx, [&] {
        std::optional<int> cap;
        if (max_dim >= 0)
            cap = max_dim;
        ms::ojson out = ms::ojson::array();
        for (const ms::PartitionChain &c : ms::enumerate_chains(n, cap))
            out.push_back(ms::chain_to_json(c));
        return ms::dump_json(out);
    });
}

char *ms_strata(ms_context *ctx, int n) {
    return guarded(ctx,
                   [&] { return ms::dump_json(ms::stratification_to_json(ms::build_stratification(n))); });
}

char *ms_blowup_schedule(ms_context *ctx, int n) {
    return guarded(ctx, [&] { return ms::dump_json(ms::schedule_to_json(n, ms::blowup_schedule(n))); });
}

char *ms_limit(ms_context *ctx, const char *family_json) {
    return guarded(ctx, [&] {
        ms::LaurentFamily f = ms::family_from_json(parse_json(family_json, "family"));
        ms::ChartPoint p = ms::limit_point(f);
        ms::ojson out;
        out["tree"] = ms::tree_to_json(p.tree);
        out["point"] = ms::point_to_json(p);
        return ms::dump_json(out);
    });
}

char *ms_point_validate(ms_context *ctx, const char *point_json) {
    return guarded(ctx, [&] {
        ms::ChartPoint p = parse_point(point_json);
        ms::validate_point(p);
        return ms::dump_json(ms::point_to_json(p));
    });
}

char *ms_transition(ms_context *ctx, const char *point_json, const char *levels_csv) {
    return guarded(ctx, [&] {
        ms::ChartPoint p = parse_point(point_json);
        std::vector<int> levels = parse_csv_ints(levels_csv, "contract");
        return ms::dump_json(ms::point_to_json(ms::transition_levels(p, levels)));
    });
}

char *ms_period(ms_context *ctx, const char *point_json, int i, int j) {
    return guarded(ctx, [&] {
        ms::ChartPoint p = parse_point(point_json);
        ms::ExtendedValue v = ms::period(p, i, j);
        ms::ojson out;
        out["pair"] = {i, j};
        out["period"] = v.str();
        return ms::dump_json(out);
    });
}

char *ms_act_sigma(ms_context *ctx, const char *point_json, const char *sigma_csv) {
    return guarded(ctx, [&] {
        ms::ChartPoint p = parse_point(point_json);
        std::vector<int> sigma = parse_csv_ints(sigma_csv, "sigma");
        return ms::dump_json(ms::point_to_json(ms::s_act(sigma, p)));
    });
}

char *ms_act_translate(ms_context *ctx, const char *point_json, const char *a_csv) {
    return guarded(ctx, [&] {
        ms::ChartPoint p = parse_point(point_json);
        std::vector<ms::Rat> a = parse_csv_rats(a_csv, "translate");
        return ms::dump_json(ms::point_to_json(ms::g_act(a, p)));
    });
}

char *ms_xi(ms_context *ctx, const char *point_json) {
    return guarded(ctx, [&] {
        ms::ChartPoint p = parse_point(point_json);
        return ms::dump_json(ms::scaled_curve_to_json(ms::xi(p)));
    });
}

char *ms_kappa(ms_context *ctx, const char *point_json, const char *rho_json) {
    return guarded(ctx, [&] {
        ms::ChartPoint p = parse_point(point_json);
        ms::Partition rho = ms::partition_from_json(parse_json(rho_json, "rho"));
        return ms::dump_json(ms::point_to_json(ms::kappa(rho, p)));
    });
}

char *ms_chow(ms_context *ctx, int n, int want_hilbert, int want_relations) {
    return guarded(ctx,
                   [&] { return ms::dump_json(ms::chow_to_json(n, want_hilbert != 0, want_relations != 0)); });
}

char *ms_level_structures(ms_context *ctx, const char *tree_json) {
    return guarded(ctx, [&] {
        ms::RootedTree shape = ms::rooted_tree_from_json(parse_json(tree_json, "tree"));
        ms::ojson out = ms::ojson::array();
        for (const ms::LevelTree &t : ms::enumerate_level_structures(shape))
            out.push_back(ms::tree_to_json(t));
        return ms::dump_json(out);
    });
}

} // extern "C"
