#ifndef CATFIN_CATFIN_HPP
#define CATFIN_CATFIN_HPP

#include "catfin/exactnum.hpp"
#include "catfin/linalg.hpp"
#include "catfin/oeis.hpp"
#include "catfin/pathlab.hpp"
#include "catfin/propcheck.hpp"
#include "catfin/qcomplex.hpp"
#include "catfin/reflection.hpp"
#include "catfin/serialize.hpp"
#include "catfin/triangles.hpp"

#endif  // CATFIN_CATFIN_HPP
