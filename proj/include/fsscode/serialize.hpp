#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fsscode/binary_matrix.hpp"
#include "fsscode/girth.hpp"
#include "fsscode/qc_lift.hpp"
#include "fsscode/set_system.hpp"

namespace fss {

using json = nlohmann::ordered_json;

/// {"v": int, "t": int, "blocks": [[int, ...], ...]}, points 1-based.
json to_json(const SetSystem& fss);
SetSystem set_system_from_json(const json& j);

/// {"m": int, "shifts": [{"block": j, "point": i, "s": int}, ...]}, 1-based,
/// block-major then ascending point.
json to_json(const SetSystem& fss, const ShiftSequence& shifts);
/// Accepts the object form above, or {"m": int, "list": [...]} holding an
/// explicit or compressed block-major list.
ShiftSequence shifts_from_json(const SetSystem& fss, const json& j);

json to_json(const SystemStats& stats);

/// {"points": [...], "blocks": [...]}, 1-based.
json to_json(const WalkWitness& w);

/// {"girth": int | "unbounded", "cap": int, "witness": {...}}; a Tanner cycle
/// witness is {"cycle": [{"row": r} | {"col": c}, ...]}, 1-based.
json to_json(const GirthReport& rep, std::size_t rows = 0);

/// MacKay's alist format: "N M" (columns, rows), max column and row
/// weights, the per-node weights, then the 1-based adjacency of every
/// column and every row, padded with zeros to the maximum weight.
std::string to_alist(const BinaryMatrix& h);
BinaryMatrix from_alist(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace fss
