// Copyright 2026 The dalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "json.hpp"

namespace dalab {

/// Serializes j with every floating-point number printed as %.17g, object
/// keys in the order nlohmann stores them (sorted). Output is a pure
/// function of the value, so equal reports give byte-identical text.
std::string dump_json(const nlohmann::json& j, int indent = 2);

/// %.17g rendering used for both JSON and CSV output. NaN and infinities
/// become null in JSON.
std::string format_float(double v);

}  // namespace dalab
