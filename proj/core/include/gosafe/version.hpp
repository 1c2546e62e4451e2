// Copyright 2026 The gosafe authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace gosafe {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gosafe
