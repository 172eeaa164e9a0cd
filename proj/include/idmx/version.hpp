// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

namespace idmx {
inline constexpr const char* kVersion = "0.1.0";
}
