#ifndef POBK_BENCH_HPP
#define POBK_BENCH_HPP

#include "pobk/bench/experiment.hpp"
#include "pobk/bench/fetch.hpp"
#include "pobk/bench/results.hpp"
#include "pobk/bench/rhs.hpp"
#include "pobk/bench/spec_file.hpp"

#endif // POBK_BENCH_HPP
