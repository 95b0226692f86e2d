#pragma once

#include "ksplit/common.hpp"
#include "ksplit/dp.hpp"
#include "ksplit/exact.hpp"
#include "ksplit/fptas.hpp"
#include "ksplit/instance.hpp"
#include "ksplit/io.hpp"
#include "ksplit/oracle.hpp"
#include "ksplit/partition.hpp"
#include "ksplit/random.hpp"
#include "ksplit/rational.hpp"
#include "ksplit/solution.hpp"
#include "ksplit/window.hpp"
