#ifndef NILPATH_NILPATH_HPP
#define NILPATH_NILPATH_HPP

#include <nilpath/error.hpp>
#include <nilpath/scalar.hpp>
#include <nilpath/matrix.hpp>
#include <nilpath/jordan.hpp>
#include <nilpath/profile.hpp>
#include <nilpath/criteria.hpp>
#include <nilpath/graph.hpp>
#include <nilpath/certify.hpp>
#include <nilpath/section.hpp>
#include <nilpath/path.hpp>
#include <nilpath/json_io.hpp>

#endif // NILPATH_NILPATH_HPP
