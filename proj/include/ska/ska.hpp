#ifndef SKA_SKA_HPP
#define SKA_SKA_HPP

#include "ska/analysis.hpp"
#include "ska/errors.hpp"
#include "ska/field.hpp"
#include "ska/json_io.hpp"
#include "ska/net.hpp"
#include "ska/partition.hpp"
#include "ska/protocol.hpp"
#include "ska/rational.hpp"
#include "ska/rng.hpp"
#include "ska/rs.hpp"
#include "ska/secrecy.hpp"

#endif
