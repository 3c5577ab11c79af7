#pragma once

#include "starloop/certificates.hpp"
#include "starloop/errors.hpp"
#include "starloop/graph.hpp"
#include "starloop/io.hpp"
#include "starloop/loop_removal.hpp"
#include "starloop/matrix.hpp"
#include "starloop/spectra.hpp"
#include "starloop/stars.hpp"
