#pragma once

#include "avt/abelian_group.hpp"
#include "avt/decompose.hpp"
#include "avt/error.hpp"
#include "avt/lattice.hpp"
#include "avt/matrix.hpp"
#include "avt/morphism_types.hpp"
#include "avt/normal_form.hpp"
#include "avt/search.hpp"
#include "avt/siegel.hpp"
#include "avt/symplectic.hpp"
