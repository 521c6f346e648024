#pragma once

#include <string>
#include <vector>

#include "posetrss/poset.hpp"

namespace fixtures {

// The five-element, two-variable example set.
inline posetrss::ElementSet five_elements()
{
    return posetrss::ElementSet({{0, 1}, {2, 1}, {1, 2}, {3, 3}, {0, 4}},
                                {"a", "b", "c", "d", "e"});
}

// Its eight linear extensions, each written top (highest) to bottom.
inline std::vector<std::string> five_elements_top_down()
{
    return {"dcbea", "dceba", "decba", "edcba", "dbcea", "dbeca", "debca", "edbca"};
}

}  // namespace fixtures
