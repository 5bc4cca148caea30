#pragma once

#include <json.hpp>

#include "ecdl/dlp_sim.hpp"
#include "ecdl/ec_group.hpp"
#include "ecdl/euclid_machine.hpp"

namespace ecdl {

// JSON wire formats. Big integers travel as decimal strings so downstream
// tools never round them through floating point.

nlohmann::json instance_to_json(const DlpInstance& inst);
DlpInstance instance_from_json(const nlohmann::json& j);

nlohmann::json inverse_result_to_json(const InverseResult& r, const Int& p, const Int& x);

nlohmann::json record_to_json(const MeasurementRecord& rec, unsigned window, unsigned n_bits,
                              const Int& q, std::uint64_t seed);

}  // namespace ecdl
