#pragma once

#include "igusa/errors.hpp"
#include "igusa/exactalg.hpp"
#include "igusa/curves.hpp"
#include "igusa/newton.hpp"
#include "igusa/fans.hpp"
#include "igusa/resolve.hpp"
#include "igusa/zeta.hpp"
#include "igusa/oracle.hpp"
#include "igusa/cli.hpp"
