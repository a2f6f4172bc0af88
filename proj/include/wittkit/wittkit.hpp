#pragma once

#include "cazanave.hpp"
#include "element.hpp"
#include "field.hpp"
#include "gersten.hpp"
#include "place.hpp"
#include "polynomial.hpp"
#include "quad_forms.hpp"
#include "residue.hpp"
#include "unit_groups.hpp"
#include "witt_ring.hpp"
