#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "vsharp/functor.hpp"

namespace vsharp {

// JSON document (format "vsharp.bundle", version 1) holding the group, the
// full irrep catalog, weights, symplectic forms and stars, and every stored
// V_K. Loading checks shapes and labels only; the mathematics is left to
// verify(), so a corrupted bundle loads and then fails verification.
std::string bundle_to_json(const FunctorInstance& f);
FunctorInstance parse_bundle(std::string_view text, std::optional<double> tau = std::nullopt);

void save_bundle(const std::filesystem::path& path, const FunctorInstance& f);
// Throws InputError on unreadable or malformed files.
FunctorInstance load_bundle(const std::filesystem::path& path, std::optional<double> tau = std::nullopt);

}  // namespace vsharp
