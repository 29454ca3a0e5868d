#pragma once

#include "fairaudit/compatibility.hpp"
#include "fairaudit/confusion.hpp"
#include "fairaudit/errors.hpp"
#include "fairaudit/measures.hpp"
#include "fairaudit/rational.hpp"
#include "fairaudit/records_io.hpp"
#include "fairaudit/report.hpp"
#include "fairaudit/roc.hpp"
#include "fairaudit/running_example.hpp"
#include "fairaudit/svg_plane.hpp"
