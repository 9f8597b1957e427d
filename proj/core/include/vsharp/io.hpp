#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "vsharp/group.hpp"
#include "vsharp/repr.hpp"

namespace vsharp {

// Throws InputError if the file cannot be read.
std::string read_text_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it over `path`.
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

// Group file: {name, order, element_names, table (row-major), generators}.
GroupPtr parse_group(std::string_view text);
GroupPtr load_group(const std::filesystem::path& path);
std::string group_to_json(const FiniteGroup& group);

// Irrep file: {label, group, degree, matrices[element][row][col] = [re, im]}.
IrrepModel parse_irrep(std::string_view text, const GroupPtr& group, const Tolerances& tol = {});
IrrepModel load_irrep(const std::filesystem::path& path, const GroupPtr& group, const Tolerances& tol = {});
std::string irrep_to_json(const IrrepModel& pi);

// Catalog manifest: {group, group_file, irreps: [paths relative to the
// manifest]}. `group` overrides group_file when given; its name must match.
IrrepCatalog load_catalog(const std::filesystem::path& manifest, const GroupPtr& group = nullptr,
                          const Tolerances& tol = {});

}  // namespace vsharp
