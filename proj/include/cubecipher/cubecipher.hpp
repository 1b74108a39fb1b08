#pragma once

#include "cubecipher/aes.hpp"
#include "cubecipher/aes_stage.hpp"
#include "cubecipher/analysis.hpp"
#include "cubecipher/errors.hpp"
#include "cubecipher/faces.hpp"
#include "cubecipher/image.hpp"
#include "cubecipher/keyschedule.hpp"
#include "cubecipher/pgm.hpp"
#include "cubecipher/pipeline.hpp"
#include "cubecipher/rotation.hpp"
#include "cubecipher/sha256.hpp"
