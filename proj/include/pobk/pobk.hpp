#ifndef POBK_POBK_HPP
#define POBK_POBK_HPP

#include "pobk/error.hpp"
#include "pobk/kmeans.hpp"
#include "pobk/lstsq.hpp"
#include "pobk/matrix_market.hpp"
#include "pobk/partition.hpp"
#include "pobk/permutation.hpp"
#include "pobk/random.hpp"
#include "pobk/reorder.hpp"
#include "pobk/solvers.hpp"
#include "pobk/sparse.hpp"

#endif // POBK_POBK_HPP
