#pragma once

#include "hydrion/roots.hpp"

namespace fixtures {

/// Eight entries of each threshold table, cross-checked; built once per test binary.
inline const hydrion::RootTables& tables8() {
    static const hydrion::RootTables t = hydrion::build_root_tables(8);
    return t;
}

}  // namespace fixtures
