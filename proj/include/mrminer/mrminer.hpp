#pragma once

// Umbrella header: frequent-itemset mining on a miniature deterministic
// map/reduce engine, plus cluster timing simulation, synthetic data
// generation, and text I/O.

#include "mrminer/apriori_mr.hpp"
#include "mrminer/cluster.hpp"
#include "mrminer/datagen.hpp"
#include "mrminer/errors.hpp"
#include "mrminer/io.hpp"
#include "mrminer/itemset.hpp"
#include "mrminer/mapreduce.hpp"
#include "mrminer/mining.hpp"
