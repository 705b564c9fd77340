#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "typal/pipeline.hpp"

TEST_CASE("placeholder") { CHECK(true); }
