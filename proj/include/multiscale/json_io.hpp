#pragma once

#include <json.hpp>

#include <string>

#include "multiscale/charts.hpp"
#include "multiscale/chow.hpp"
#include "multiscale/degeneration.hpp"
#include "multiscale/leveltrees.hpp"
#include "multiscale/partitions.hpp"
#include "multiscale/strata.hpp"

namespace ms {

// Insertion-ordered JSON so emitted key order is deliberate and stable.
using ojson = nlohmann::ordered_json;

// Parsers throw validation_error with a JSON-pointer-style path in the
// message ("/z/1,3: ..."). Serializers emit canonical form: sorted blocks,
// sorted vertex/edge lists, rationals as "p/q" with q >= 1.

ojson partition_to_json(const Partition &p);
Partition partition_from_json(const ojson &j, const std::string &path = ""); // n inferred

ojson chain_to_json(const PartitionChain &c);
PartitionChain chain_from_json(const ojson &j, const std::string &path = "");

ojson tree_to_json(const LevelTree &t);
LevelTree tree_from_json(const ojson &j, const std::string &path = "");

ojson rooted_tree_to_json(const RootedTree &t);
// Accepts vertices with or without "level" (levels are ignored).
RootedTree rooted_tree_from_json(const ojson &j, const std::string &path = "");

ojson point_to_json(const ChartPoint &p);
ChartPoint point_from_json(const ojson &j, const std::string &path = "");

ojson family_to_json(const LaurentFamily &f);
LaurentFamily family_from_json(const ojson &j, const std::string &path = "");

ojson scaled_curve_to_json(const ScaledCurve &s);

ojson stratification_to_json(const StratificationPoset &s);
ojson schedule_to_json(int n, const std::vector<std::pair<int, std::vector<Partition>>> &stages);

// {"n":..., "generators":[...]} plus "relations" / "hilbert" on demand;
// hilbert alone emits just {"hilbert":[...]}.
ojson chow_to_json(int n, bool want_hilbert, bool want_relations);

std::string dump_json(const ojson &j); // 2-space indent, trailing newline

} // namespace ms
