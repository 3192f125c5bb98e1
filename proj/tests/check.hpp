#pragma once

#include <doctest.h>

#include "rsm/common.hpp"

// relative closeness of complex values
#define CHECK_REL(a, b, tol) CHECK(rsm::rel_diff((a), (b)) < (tol))
#define REQUIRE_REL(a, b, tol) REQUIRE(rsm::rel_diff((a), (b)) < (tol))
