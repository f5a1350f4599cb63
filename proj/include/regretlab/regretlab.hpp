#ifndef REGRETLAB_REGRETLAB_HPP
#define REGRETLAB_REGRETLAB_HPP

#include "regretlab/forecasters.hpp"
#include "regretlab/linalg.hpp"
#include "regretlab/lowerbound.hpp"
#include "regretlab/oracle.hpp"
#include "regretlab/parallel.hpp"
#include "regretlab/random.hpp"
#include "regretlab/regret.hpp"
#include "regretlab/report_io.hpp"
#include "regretlab/sequence.hpp"
#include "regretlab/verify.hpp"

#endif  // REGRETLAB_REGRETLAB_HPP
