// Everything.
#pragma once

#include "forge/delta.hpp"
#include "forge/simplicial_set.hpp"
#include "forge/congruence.hpp"
#include "forge/colimits.hpp"
#include "forge/regularity.hpp"
#include "forge/isomorphism.hpp"
#include "forge/poset.hpp"
#include "forge/subdivision.hpp"
#include "forge/desingularize.hpp"
#include "forge/cylinders.hpp"
#include "forge/io.hpp"
#include "forge/harness/corpus.hpp"
#include "forge/harness/corpus_io.hpp"
#include "forge/harness/posets.hpp"
#include "forge/harness/report.hpp"
#include "forge/harness/verify.hpp"
