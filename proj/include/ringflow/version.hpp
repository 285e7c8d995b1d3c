#pragma once

namespace ringflow {

#ifndef RINGFLOW_BUILD_ID
#define RINGFLOW_BUILD_ID "0.1.0-unknown"
#endif

inline const char* build_id() { return RINGFLOW_BUILD_ID; }

} // namespace ringflow
