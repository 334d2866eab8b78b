#ifndef ND_ND_HPP
#define ND_ND_HPP

// Umbrella header.

#include "nd/datasets.hpp"
#include "nd/errors.hpp"
#include "nd/evaluate.hpp"
#include "nd/fourier.hpp"
#include "nd/model.hpp"
#include "nd/preprocess.hpp"
#include "nd/random.hpp"
#include "nd/time_series.hpp"
#include "nd/train.hpp"

#endif
