#pragma once

#include "minkhelix/helix.hpp"

#include "json.hpp"

#include <iosfwd>

namespace minkhelix {

/// HelixReport as JSON; field names follow schemas/helix_report.schema.json.
nlohmann::json report_to_json(const HelixReport& report);

/// `s,r,theta,H,f,m,n,axis_residual_pointwise`.
void write_plot_csv(const HelixReport& report, std::ostream& out);

nlohmann::json vec_to_json(const Vec4& v);

}  // namespace minkhelix
