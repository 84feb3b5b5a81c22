#pragma once

#include <array>
#include <utility>

// 49-point reference list on the ZDT1 ideal front (f1, f2), rounded to 8 decimals.
inline constexpr std::array<std::pair<double, double>, 49> zdt1_reference_front{ {
    { 0.02020202, 0.85786619 },
    { 0.04040404, 0.79899244 },
    { 0.06060606, 0.75381702 },
    { 0.08080808, 0.71573238 },
    { 0.1010101, 0.68217914 },
    { 0.12121212, 0.65184469 },
    { 0.14141414, 0.62394928 },
    { 0.16161616, 0.59798487 },
    { 0.18181818, 0.57359857 },
    { 0.2020202, 0.55053343 },
    { 0.22222222, 0.52859548 },
    { 0.24242424, 0.50763404 },
    { 0.26262626, 0.48752926 },
    { 0.28282828, 0.46818398 },
    { 0.3030303, 0.44951812 },
    { 0.32323232, 0.43146476 },
    { 0.34343434, 0.41396728 },
    { 0.36363636, 0.39697731 },
    { 0.38383838, 0.38045308 },
    { 0.4040404, 0.36435827 },
    { 0.42424242, 0.34866105 },
    { 0.44444444, 0.33333333 },
    { 0.46464646, 0.31835019 },
    { 0.48484848, 0.30368938 },
    { 0.50505051, 0.28933095 },
    { 0.52525253, 0.27525692 },
    { 0.54545455, 0.26145105 },
    { 0.56565657, 0.24789857 },
    { 0.58585859, 0.234586 },
    { 0.60606061, 0.22150106 },
    { 0.62626263, 0.20863243 },
    { 0.64646465, 0.19596975 },
    { 0.66666667, 0.18350342 },
    { 0.68686869, 0.17122459 },
    { 0.70707071, 0.15912503 },
    { 0.72727273, 0.14719713 },
    { 0.74747475, 0.13543378 },
    { 0.76767677, 0.12382835 },
    { 0.78787879, 0.11237464 },
    { 0.80808081, 0.10106685 },
    { 0.82828283, 0.08989955 },
    { 0.84848485, 0.07886763 },
    { 0.86868687, 0.06796627 },
    { 0.88888889, 0.05719096 },
    { 0.90909091, 0.04653741 },
    { 0.92929293, 0.03600159 },
    { 0.94949495, 0.02557969 },
    { 0.96969697, 0.01526807 },
    { 0.98989899, 0.00506332 },
} };
