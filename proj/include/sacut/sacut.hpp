#ifndef SACUT_SACUT_HPP
#define SACUT_SACUT_HPP

#include "sacut/common.hpp"
#include "sacut/matrix.hpp"
#include "sacut/spectrum.hpp"
#include "sacut/graph.hpp"
#include "sacut/linprog.hpp"
#include "sacut/csp.hpp"
#include "sacut/sherali_adams.hpp"
#include "sacut/partition.hpp"
#include "sacut/rounding.hpp"
#include "sacut/maxqp.hpp"
#include "sacut/generators.hpp"
#include "sacut/verify.hpp"

#endif  // SACUT_SACUT_HPP
