#ifndef LWQ_LWQ_HPP
#define LWQ_LWQ_HPP

#include "lwq/baselines.hpp"
#include "lwq/core.hpp"
#include "lwq/equations.hpp"
#include "lwq/lambert_w.hpp"

#endif  // LWQ_LWQ_HPP
