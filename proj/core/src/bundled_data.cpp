#include "bundled_data.hpp"

namespace dpdlogit::detail {
namespace {

constexpr const char k_vasoconstriction[] = R"csv(volume,rate,response
3.7,0.825,1
3.5,1.09,1
1.25,2.5,1
0.75,1.5,1
0.8,3.2,1
0.7,3.5,1
0.6,0.75,0
1.1,1.7,0
0.9,0.75,0
0.9,0.45,0
0.8,0.57,0
0.55,2.75,0
0.6,3,0
1.4,2.33,1
0.75,3.75,1
2.3,1.64,1
3.2,1.6,1
0.85,1.415,1
1.7,1.06,0
1.8,1.8,1
0.4,2,0
0.95,1.36,0
1.35,1.35,0
1.5,1.36,0
1.6,1.78,1
0.6,1.5,0
1.8,1.5,1
0.95,1.9,0
1.9,0.95,1
1.6,0.4,0
2.7,0.75,1
2.35,0.03,0
1.1,1.83,0
1.1,2.2,1
1.2,2,1
0.8,3.33,1
0.95,1.9,0
0.75,1.9,0
1.3,1.625,1
)csv";

constexpr const char k_lymphatic_cancer[] = R"csv(age,acid,xray,size,grade,nodes
66,0.48,0,0,0,0
68,0.56,0,0,0,0
66,0.50,0,0,0,0
56,0.52,0,0,0,0
58,0.50,0,0,0,0
60,0.49,0,0,0,0
65,0.46,1,0,0,0
60,0.62,1,0,0,0
50,0.56,0,0,1,1
49,0.55,1,0,0,0
61,0.62,0,0,0,0
58,0.71,0,0,0,0
51,0.65,0,0,0,0
67,0.67,1,0,1,1
67,0.47,0,0,1,0
51,0.49,0,0,0,0
56,0.50,0,0,1,0
60,0.78,0,0,0,0
52,0.83,0,0,0,0
56,0.98,0,0,0,0
67,0.52,0,0,0,0
63,0.75,0,0,0,0
59,0.99,0,0,1,1
64,1.87,0,0,0,0
61,1.36,1,0,0,1
56,0.82,0,0,0,1
64,0.40,0,1,1,0
61,0.50,0,1,0,0
64,0.50,0,1,1,0
63,0.40,0,1,0,0
52,0.55,0,1,1,0
66,0.59,0,1,1,0
58,0.48,1,1,0,1
57,0.51,1,1,1,1
65,0.49,0,1,0,1
65,0.48,0,1,1,0
59,0.63,1,1,1,0
61,1.02,0,1,0,0
53,0.76,0,1,0,0
67,0.95,0,1,0,0
53,0.66,0,1,1,0
65,0.84,1,1,1,1
50,0.81,1,1,1,1
60,0.76,1,1,1,1
45,0.70,0,1,1,1
56,0.78,1,1,1,1
46,0.70,0,1,0,1
67,0.67,0,1,0,1
63,0.82,0,1,0,1
57,0.67,0,1,1,1
51,0.72,1,1,0,1
64,0.89,1,1,0,1
68,1.26,1,1,1,1
)csv";

constexpr const char k_leukemia[] = R"csv(wbc,ag,time
2300,present,65
750,present,156
4300,present,100
2600,present,134
6000,present,16
10500,present,108
10000,present,121
17000,present,4
5400,present,39
7000,present,143
9400,present,56
32000,present,26
35000,present,22
100000,present,1
100000,present,1
52000,present,5
100000,present,65
4400,absent,56
3000,absent,65
4000,absent,17
1500,absent,7
9000,absent,16
5300,absent,22
10000,absent,3
19000,absent,4
27000,absent,2
28000,absent,3
31000,absent,8
26000,absent,4
21000,absent,3
79000,absent,30
100000,absent,4
100000,absent,43
)csv";

constexpr BundledFile kFiles[] = {
    {"vasoconstriction", k_vasoconstriction, 0x734b97bda4cde684ull},
    {"lymphatic_cancer", k_lymphatic_cancer, 0x8f8f6a49a6f6b207ull},
    {"leukemia", k_leukemia, 0x2a4376a90f7a6961ull},
};

}  // namespace

std::span<const BundledFile> bundled_files() { return kFiles; }

}  // namespace dpdlogit::detail
