#pragma once

// JSON documents shared by the command-line tool and the Python module.

#include <json.hpp>

#include "helpkit/help.hpp"
#include "helpkit/structure.hpp"

namespace helpkit {

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json to_json(const FiniteGroup& g, const StructureReport& r);
nlohmann::json to_json(const FiniteGroup& g, const AuditReport& r);

// 0 when every level is certified or undecided, 3 when any hit the node budget.
int audit_exit_code(const AuditReport& r);

}  // namespace helpkit
