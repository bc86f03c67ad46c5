#ifndef SUSPEDF_SUSPEDF_HPP
#define SUSPEDF_SUSPEDF_HPP

#include "suspedf/analysis.hpp"
#include "suspedf/io.hpp"
#include "suspedf/model.hpp"
#include "suspedf/render.hpp"
#include "suspedf/search.hpp"
#include "suspedf/simulator.hpp"
#include "suspedf/time_value.hpp"
#include "suspedf/validator.hpp"

#endif
