#pragma once

#include <memory>
#include <optional>
#include <string>

#include "gbpd/diffusion.hpp"
#include "gbpd/field.hpp"

namespace gbpd {

/// A parsed model: complex built from the declared regions and factor
/// supports, potentials assembled per member, optional Dirichlet data.
struct Model {
    std::shared_ptr<const Complex> complex;
    Field h;
    std::optional<BoundaryClamp> clamp;
};

/// Reads the JSON model document; schema violations name the offending
/// field. Factor tables are row-major with the smallest variable id
/// varying slowest. kind "energy" adds the table to the member potential,
/// kind "potential" adds -ln(table) and requires positive entries.
Model parse_model(const std::string& path);
Model parse_model_text(const std::string& text);

} // namespace gbpd
