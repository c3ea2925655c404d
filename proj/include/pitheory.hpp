#pragma once

#include "pitheory/analyzed_group.hpp"
#include "pitheory/builders.hpp"
#include "pitheory/character_table.hpp"
#include "pitheory/classes.hpp"
#include "pitheory/cyclotomic.hpp"
#include "pitheory/error.hpp"
#include "pitheory/io.hpp"
#include "pitheory/kernels.hpp"
#include "pitheory/normal.hpp"
#include "pitheory/partial.hpp"
#include "pitheory/perm.hpp"
#include "pitheory/primes.hpp"
#include "pitheory/verify.hpp"
