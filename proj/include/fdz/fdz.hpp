#pragma once

#include "fdz/integer.hpp"
#include "fdz/matrix.hpp"
#include "fdz/smith.hpp"
#include "fdz/abelian.hpp"
#include "fdz/ring.hpp"
#include "fdz/ideals.hpp"
#include "fdz/bilinear.hpp"
#include "fdz/poly.hpp"
#include "fdz/spectrum.hpp"
#include "fdz/morphism.hpp"
#include "fdz/classify.hpp"
#include "fdz/eqcheck.hpp"
#include "fdz/cocycle.hpp"
#include "fdz/deform.hpp"
#include "fdz/formula.hpp"
#include "fdz/modelcheck.hpp"
#include "fdz/ringfile.hpp"
#include "fdz/corpus.hpp"
#include "fdz/report.hpp"
