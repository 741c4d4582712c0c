#pragma once

namespace graspgen {

inline constexpr int version_major = 0;
inline constexpr int version_minor = 1;
inline constexpr int version_patch = 0;
inline constexpr const char* version_string = "0.1.0";

// Version of the grasp set JSON document layout (see docs/grasp-set-schema.md).
inline constexpr int grasp_set_schema_version = 1;

}  // namespace graspgen
