#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

using json = nlohmann::ordered_json;

// Instance file format: structured key-value text with agents (id + weight),
// item ids, and a row-major cost matrix. Rationals are "p/q" or integer
// strings; ids are 1-based and consecutive.
//
// {
//   "agents": [{"id": 1, "weight": "3/10"}, {"id": 2, "weight": "7/10"}],
//   "items": [1, 2, 3],
//   "costs": [["1/100", "1", "1"], ["1/100", "1", "1"]]
// }

namespace io_detail {

inline Rational rational_field(const json& node, const std::string& where) {
    try {
        if (node.is_number_integer()) return Rational(node.get<long long>());
        if (node.is_string()) return parse_rational(node.get<std::string>());
    } catch (const ParseError& err) {
        throw ParseError(where + ": " + err.what());
    }
    throw ParseError(where + ": expected a rational as \"p/q\" or integer");
}

}  // namespace io_detail

inline Instance instance_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("agents") || !doc.contains("items") ||
        !doc.contains("costs"))
        throw ParseError("instance needs 'agents', 'items' and 'costs' fields");
    const auto& agents = doc["agents"];
    const auto& items = doc["items"];
    const auto& costs = doc["costs"];
    if (!agents.is_array() || agents.empty()) throw ParseError("'agents' must be a non-empty list");
    if (!items.is_array()) throw ParseError("'items' must be a list of ids");
    if (!costs.is_array()) throw ParseError("'costs' must be a row-major matrix");

    const int n = static_cast<int>(agents.size());
    const int m = static_cast<int>(items.size());
    std::vector<Rational> weights;
    for (int i = 0; i < n; ++i) {
        const auto& agent = agents[i];
        if (!agent.is_object() || !agent.contains("id") || !agent.contains("weight"))
            throw ParseError("agent " + std::to_string(i + 1) + ": expected {id, weight}");
        if (agent["id"] != i + 1)
            throw ParseError("agent ids must be consecutive from 1, got " +
                             agent["id"].dump() + " at position " + std::to_string(i + 1));
        weights.push_back(
            io_detail::rational_field(agent["weight"], "agent " + std::to_string(i + 1)));
    }
    for (int e = 0; e < m; ++e)
        if (items[e] != e + 1)
            throw ParseError("item ids must be consecutive from 1, got " + items[e].dump() +
                             " at position " + std::to_string(e + 1));
    if (static_cast<int>(costs.size()) != n)
        throw DimensionMismatchError("cost matrix has " + std::to_string(costs.size()) +
                                     " rows for " + std::to_string(n) + " agents");
    std::vector<std::vector<Rational>> matrix(n);
    for (int i = 0; i < n; ++i) {
        if (!costs[i].is_array() || static_cast<int>(costs[i].size()) != m)
            throw DimensionMismatchError("cost row " + std::to_string(i + 1) + " needs " +
                                         std::to_string(m) + " entries");
        for (int e = 0; e < m; ++e)
            matrix[i].push_back(io_detail::rational_field(
                costs[i][e],
                "cost (agent " + std::to_string(i + 1) + ", item " + std::to_string(e + 1) + ")"));
    }
    return Instance(std::move(weights), std::move(matrix));
}

inline json instance_to_json(const Instance& inst) {
    json doc;
    doc["agents"] = json::array();
    for (int i = 0; i < inst.agent_count(); ++i)
        doc["agents"].push_back({{"id", i + 1}, {"weight", to_string(inst.weight(i))}});
    doc["items"] = json::array();
    for (int e = 0; e < inst.item_count(); ++e) doc["items"].push_back(e + 1);
    doc["costs"] = json::array();
    for (int i = 0; i < inst.agent_count(); ++i) {
        json row = json::array();
        for (int e = 0; e < inst.item_count(); ++e) row.push_back(to_string(inst.cost(i, e)));
        doc["costs"].push_back(row);
    }
    return doc;
}

inline Instance load_instance(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(std::string("instance parse error: ") + err.what());
    }
    return instance_from_json(doc);
}

inline Instance load_instance(const std::string& text) {
    std::istringstream in(text);
    return load_instance(in);
}

inline Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file '" + path + "'");
    return load_instance(in);
}

inline std::string serialize_instance(const Instance& inst) {
    return instance_to_json(inst).dump(2) + "\n";
}

// Allocation files: {"bundles": [[item ids...], ...]} in agent order.
inline json allocation_to_json(const Allocation& alloc) {
    json doc;
    doc["bundles"] = json::array();
    for (int i = 0; i < alloc.agent_count(); ++i) {
        json bundle = json::array();
        for (int e : alloc.bundle(i)) bundle.push_back(e + 1);
        doc["bundles"].push_back(bundle);
    }
    return doc;
}

inline Allocation allocation_from_json(const json& doc, int agent_count, int item_count) {
    if (!doc.is_object() || !doc.contains("bundles") || !doc["bundles"].is_array())
        throw ParseError("allocation needs a 'bundles' list");
    std::vector<std::vector<int>> bundles;
    for (const auto& bundle : doc["bundles"]) {
        bundles.emplace_back();
        for (const auto& id : bundle) {
            if (!id.is_number_integer()) throw ParseError("item ids must be integers");
            bundles.back().push_back(id.get<int>() - 1);
        }
    }
    return Allocation::from_bundles(agent_count, item_count, std::move(bundles));
}

inline Allocation load_allocation_file(const std::string& path, const Instance& inst) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open allocation file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(std::string("allocation parse error: ") + err.what());
    }
    return allocation_from_json(doc, inst.agent_count(), inst.item_count());
}

inline json report_to_json(const FairnessReport& report) {
    json doc;
    doc["notion"] = report.notion;
    doc["verdict"] = report.passed() ? "pass" : "fail";
    if (report.witness) {
        json w;
        if (report.witness->envious >= 0) w["envious"] = report.witness->envious + 1;
        if (report.witness->envied >= 0) w["envied"] = report.witness->envied + 1;
        if (report.witness->item >= 0) w["item"] = report.witness->item + 1;
        if (report.witness->dominator) w["dominator"] = allocation_to_json(*report.witness->dominator);
        doc["witness"] = w;
    }
    return doc;
}

}  // namespace fairdiv
