#pragma once

#include "hsf/genverify.hpp"
#include "hsf/hierarchy.hpp"
#include "hsf/isoclique.hpp"
#include "hsf/params.hpp"
#include "hsf/tester.hpp"

#include "json.hpp"

#include <cstdint>
#include <string_view>

namespace hsf {

nlohmann::json to_json(const HsfParams &p);
// [{members, outDegree, kind}]
nlohmann::json to_json(const std::vector<IsolatedClique> &cliques);
// {components: [{kind, members}], cutEdgeCount, params}
nlohmann::json partition_report(const Partition &p, const HsfParams &params);
// {depth, levels: [{vertices, edges, cliques}]}
nlohmann::json cascade_report(const ContractionCascade &c);
nlohmann::json to_json(const SfVerdict &v);
nlohmann::json to_json(const HsfVerdict &v);
nlohmann::json to_json(const TestVerdict &v);

// 64-bit FNV-1a, printed as 16 hex digits in manifests.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t x);

} // namespace hsf
