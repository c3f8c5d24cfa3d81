#pragma once

#include "cdr/instance.hpp"

namespace cdr::fixtures {

/// Three objects, rho = 0.3: o1/o2 swap goals inside the overlap strip, o3
/// travels from r1's exclusive side to r2's and needs a handoff.
inline Instance fig2_left()
{
    const double r = 0.05;
    return new_instance({1.0, 1.0}, 0.3,
                        {
                            {r, {0.45, 0.30}, {0.56, 0.36}},
                            {r, {0.55, 0.30}, {0.44, 0.36}},
                            {r, {0.15, 0.70}, {0.85, 0.70}},
                        });
}

/// Full overlap, five objects: a 2-cycle {o1,o2} and a 3-cycle o3 -> o4 -> o5 -> o3.
inline Instance fig2_right()
{
    const double r = 0.05;
    return new_instance({1.0, 1.0}, 1.0,
                        {
                            {r, {0.20, 0.20}, {0.33, 0.26}},
                            {r, {0.32, 0.20}, {0.19, 0.26}},
                            {r, {0.60, 0.60}, {0.772, 0.570}},
                            {r, {0.72, 0.60}, {0.660, 0.764}},
                            {r, {0.66, 0.704}, {0.548, 0.570}},
                        });
}

/// Variant of fig2_left with o1/o2 moved into r2's exclusive side: the 2-cycle
/// needs a buffer in S(r2) while o3 still waits for a handoff.
inline Instance fig6()
{
    const double r = 0.05;
    return new_instance({1.0, 1.0}, 0.3,
                        {
                            {r, {0.74, 0.30}, {0.86, 0.36}},
                            {r, {0.86, 0.30}, {0.74, 0.36}},
                            {r, {0.15, 0.70}, {0.85, 0.70}},
                        });
}

} // namespace cdr::fixtures
