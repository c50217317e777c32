#pragma once

#include "fsm_jacobi/adaptive_fsm.hpp"
#include "fsm_jacobi/diagonal_field.hpp"
#include "fsm_jacobi/symbol_set.hpp"
#include "fsm_jacobi/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace fsm_jacobi::io {

using nlohmann::json;

/// Fixed 17-significant-digit formatting for reproducible text output.
std::string format_g17(double x);
std::string format_complex(Cplx z);

/// Accepts "1.5", "2i", "1.5+0.25i", "1e-3-2.5i".
Cplx parse_complex(const std::string& text);

/// Parses "u,v,w" with complex components.
Triple parse_triple(const std::string& text);

/// Set documents: complex numbers as [re, im] arrays, variants tagged by
/// "kind" ("points" | "interval" | "circle"), densities under "samples".
json symbol_set_to_json(const SymbolSet& set);
SymbolSet symbol_set_from_json(const json& j);

json sets_to_json(const TriSymbolSet& sets);
TriSymbolSet load_sets(const std::filesystem::path& path);

/// Field dump/load as JSON lines: a generator metadata header record, then
/// one record per index {i, u:[re,im], v:[re,im], w:[re,im]}.
void save_field(const DiagonalField& field, const std::filesystem::path& path);
DiagonalField load_field(const std::filesystem::path& path);

/// Right-hand sides as JSON lines {i, b:[re,im]}; absent indices are zero.
std::map<Index, Cplx> load_rhs(const std::filesystem::path& path);

/// Point clouds as CSV: "re,im" rows (or a single "value" column for real
/// clouds such as singular values).
void write_cloud_csv(std::span<const Cplx> cloud, const std::filesystem::path& path,
                     bool real_only = false);

/// Report table CSV with columns n,l_n,r_n,size,inv_norm,residual,delta.
void write_report_csv(const SolveReport& report, const std::filesystem::path& path);
json report_to_json(const SolveReport& report);

/// Banded-system export: three-column CSV (sub, main, super) next to a JSON
/// header {l, r, shift_k}.
void write_system_csv(const BandedSystem& sys, const std::filesystem::path& csv_path,
                      const std::filesystem::path& header_path);

/// Writes atomically (temp file + rename).
void atomic_write(const std::filesystem::path& path, const std::string& content);

} // namespace fsm_jacobi::io
