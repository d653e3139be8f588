#pragma once
// Umbrella header.

#include "alcove.hpp"
#include "conjclass.hpp"
#include "double.hpp"
#include "fusion.hpp"
#include "hpn.hpp"
#include "implosion.hpp"
#include "liegroup.hpp"
#include "linalg.hpp"
#include "qhspace.hpp"
#include "quat.hpp"
#include "random.hpp"
#include "suites.hpp"
#include "tolerances.hpp"
#include "verify.hpp"
