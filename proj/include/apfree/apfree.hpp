#pragma once

#include "apfree/bigint.hpp"
#include "apfree/constructions.hpp"
#include "apfree/counting.hpp"
#include "apfree/data_io.hpp"
#include "apfree/decimal_root.hpp"
#include "apfree/error.hpp"
#include "apfree/growth.hpp"
#include "apfree/permutation.hpp"
#include "apfree/theta.hpp"
#include "apfree/theta_table.hpp"
