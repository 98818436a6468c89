#pragma once

// Embedded quadrature constant tables, verified by the exactness tests.
// Gauss-Legendre nodes/weights on [-1,1]; symmetric positive-weight triangle
// rules on the reference triangle (0,0),(1,0),(0,1) with weights summing to 1/2.

namespace nlfem::detail {

inline constexpr int kGaussMax = 16;

inline constexpr double kGaussNodes[] = {
    0.0,
    -0.5773502691896257645,
    0.5773502691896257645,
    -0.774596669241483377,
    0.0,
    0.774596669241483377,
    -0.8611363115940525752,
    -0.3399810435848562648,
    0.3399810435848562648,
    0.8611363115940525752,
    -0.9061798459386639928,
    -0.538469310105683091,
    0.0,
    0.538469310105683091,
    0.9061798459386639928,
    -0.9324695142031520278,
    -0.6612093864662645137,
    -0.2386191860831969086,
    0.2386191860831969086,
    0.6612093864662645137,
    0.9324695142031520278,
    -0.9491079123427585245,
    -0.7415311855993944399,
    -0.4058451513773971669,
    0.0,
    0.4058451513773971669,
    0.7415311855993944399,
    0.9491079123427585245,
    -0.9602898564975362317,
    -0.7966664774136267396,
    -0.5255324099163289858,
    -0.1834346424956498049,
    0.1834346424956498049,
    0.5255324099163289858,
    0.7966664774136267396,
    0.9602898564975362317,
    -0.9681602395076260898,
    -0.8360311073266357943,
    -0.6133714327005903973,
    -0.324253423403808929,
    0.0,
    0.324253423403808929,
    0.6133714327005903973,
    0.8360311073266357943,
    0.9681602395076260898,
    -0.9739065285171717201,
    -0.8650633666889845107,
    -0.6794095682990244062,
    -0.4333953941292471908,
    -0.1488743389816312109,
    0.1488743389816312109,
    0.4333953941292471908,
    0.6794095682990244062,
    0.8650633666889845107,
    0.9739065285171717201,
    -0.9782286581460569928,
    -0.8870625997680952991,
    -0.7301520055740493241,
    -0.5190961292068118159,
    -0.2695431559523449723,
    0.0,
    0.2695431559523449723,
    0.5190961292068118159,
    0.7301520055740493241,
    0.8870625997680952991,
    0.9782286581460569928,
    -0.9815606342467192507,
    -0.9041172563704748567,
    -0.769902674194304687,
    -0.5873179542866174473,
    -0.3678314989981801938,
    -0.1252334085114689155,
    0.1252334085114689155,
    0.3678314989981801938,
    0.5873179542866174473,
    0.769902674194304687,
    0.9041172563704748567,
    0.9815606342467192507,
    -0.9841830547185881495,
    -0.9175983992229779652,
    -0.8015780907333099128,
    -0.6423493394403402206,
    -0.4484927510364468529,
    -0.2304583159551347941,
    0.0,
    0.2304583159551347941,
    0.4484927510364468529,
    0.6423493394403402206,
    0.8015780907333099128,
    0.9175983992229779652,
    0.9841830547185881495,
    -0.9862838086968123388,
    -0.9284348836635735173,
    -0.8272013150697649932,
    -0.6872929048116854701,
    -0.515248636358154092,
    -0.3191123689278897604,
    -0.1080549487073436621,
    0.1080549487073436621,
    0.3191123689278897604,
    0.515248636358154092,
    0.6872929048116854701,
    0.8272013150697649932,
    0.9284348836635735173,
    0.9862838086968123388,
    -0.9879925180204854285,
    -0.9372733924007059043,
    -0.8482065834104272162,
    -0.7244177313601700474,
    -0.5709721726085388475,
    -0.3941513470775633699,
    -0.2011940939974345223,
    0.0,
    0.2011940939974345223,
    0.3941513470775633699,
    0.5709721726085388475,
    0.7244177313601700474,
    0.8482065834104272162,
    0.9372733924007059043,
    0.9879925180204854285,
    -0.9894009349916499326,
    -0.9445750230732325761,
    -0.8656312023878317439,
    -0.7554044083550030339,
    -0.6178762444026437484,
    -0.4580167776572273863,
    -0.2816035507792589132,
    -0.09501250983763744019,
    0.09501250983763744019,
    0.2816035507792589132,
    0.4580167776572273863,
    0.6178762444026437484,
    0.7554044083550030339,
    0.8656312023878317439,
    0.9445750230732325761,
    0.9894009349916499326};

inline constexpr double kGaussWeights[] = {
    2.0,
    1.0,
    1.0,
    0.5555555555555555556,
    0.8888888888888888889,
    0.5555555555555555556,
    0.3478548451374538574,
    0.6521451548625461426,
    0.6521451548625461426,
    0.3478548451374538574,
    0.2369268850561890875,
    0.478628670499366468,
    0.5688888888888888889,
    0.478628670499366468,
    0.2369268850561890875,
    0.171324492379170345,
    0.3607615730481386076,
    0.4679139345726910474,
    0.4679139345726910474,
    0.3607615730481386076,
    0.171324492379170345,
    0.1294849661688696933,
    0.2797053914892766679,
    0.381830050505118945,
    0.4179591836734693878,
    0.381830050505118945,
    0.2797053914892766679,
    0.1294849661688696933,
    0.1012285362903762592,
    0.2223810344533744705,
    0.3137066458778872873,
    0.362683783378361983,
    0.362683783378361983,
    0.3137066458778872873,
    0.2223810344533744705,
    0.1012285362903762592,
    0.08127438836157441197,
    0.1806481606948574041,
    0.2606106964029354623,
    0.3123470770400028401,
    0.3302393550012597632,
    0.3123470770400028401,
    0.2606106964029354623,
    0.1806481606948574041,
    0.08127438836157441197,
    0.06667134430868813759,
    0.1494513491505805931,
    0.219086362515982044,
    0.2692667193099963551,
    0.2955242247147528702,
    0.2955242247147528702,
    0.2692667193099963551,
    0.219086362515982044,
    0.1494513491505805931,
    0.06667134430868813759,
    0.05566856711617366648,
    0.1255803694649046246,
    0.1862902109277342514,
    0.2331937645919904799,
    0.2628045445102466622,
    0.2729250867779006307,
    0.2628045445102466622,
    0.2331937645919904799,
    0.1862902109277342514,
    0.1255803694649046246,
    0.05566856711617366648,
    0.04717533638651182719,
    0.106939325995318431,
    0.1600783285433462263,
    0.2031674267230659217,
    0.2334925365383548088,
    0.249147045813402785,
    0.249147045813402785,
    0.2334925365383548088,
    0.2031674267230659217,
    0.1600783285433462263,
    0.106939325995318431,
    0.04717533638651182719,
    0.04048400476531587952,
    0.09212149983772844791,
    0.1388735102197872385,
    0.1781459807619457383,
    0.2078160475368885023,
    0.2262831802628972384,
    0.2325515532308739102,
    0.2262831802628972384,
    0.2078160475368885023,
    0.1781459807619457383,
    0.1388735102197872385,
    0.09212149983772844791,
    0.04048400476531587952,
    0.03511946033175186303,
    0.08015808715976020981,
    0.1215185706879031847,
    0.1572031671581935346,
    0.1855383974779378137,
    0.205198463721295604,
    0.2152638534631577902,
    0.2152638534631577902,
    0.205198463721295604,
    0.1855383974779378137,
    0.1572031671581935346,
    0.1215185706879031847,
    0.08015808715976020981,
    0.03511946033175186303,
    0.03075324199611726835,
    0.07036604748810812471,
    0.107159220467171935,
    0.1395706779261543144,
    0.1662692058169939336,
    0.186161000015562211,
    0.1984314853271115765,
    0.2025782419255612729,
    0.1984314853271115765,
    0.186161000015562211,
    0.1662692058169939336,
    0.1395706779261543144,
    0.107159220467171935,
    0.07036604748810812471,
    0.03075324199611726835,
    0.02715245941175409485,
    0.06225352393864789286,
    0.09515851168249278481,
    0.1246289712555338721,
    0.1495959888165767321,
    0.1691565193950025382,
    0.1826034150449235889,
    0.1894506104550684963,
    0.1894506104550684963,
    0.1826034150449235889,
    0.1691565193950025382,
    0.1495959888165767321,
    0.1246289712555338721,
    0.09515851168249278481,
    0.06225352393864789286,
    0.02715245941175409485};

inline constexpr int kGaussOffset[] = {0, 1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 66, 78, 91, 105, 120, 136};

// degree 1, 1 points (x, y, w)

inline constexpr double kTri1[][3] = {
    {0.3333333333333333333, 0.3333333333333333333, 0.5}
};

// degree 2, 3 points (x, y, w)

inline constexpr double kTri2[][3] = {
    {0.1666666666666666667, 0.1666666666666666667, 0.1666666666666666667},
    {0.6666666666666666667, 0.1666666666666666667, 0.1666666666666666667},
    {0.1666666666666666667, 0.6666666666666666667, 0.1666666666666666667}
};

// degree 4, 6 points (x, y, w)

inline constexpr double kTri4[][3] = {
    {0.4459484909159648863, 0.4459484909159648863, 0.1116907948390057328},
    {0.1081030181680702274, 0.4459484909159648863, 0.1116907948390057328},
    {0.4459484909159648863, 0.1081030181680702274, 0.1116907948390057328},
    {0.09157621350977074346, 0.09157621350977074346, 0.05497587182766093382},
    {0.8168475729804585131, 0.09157621350977074346, 0.05497587182766093382},
    {0.09157621350977074346, 0.8168475729804585131, 0.05497587182766093382}
};

// degree 5, 7 points (x, y, w)

inline constexpr double kTri5[][3] = {
    {0.3333333333333333333, 0.3333333333333333333, 0.1125},
    {0.1012865073234563388, 0.1012865073234563388, 0.0629695902724135763},
    {0.7974269853530873224, 0.1012865073234563388, 0.0629695902724135763},
    {0.1012865073234563388, 0.7974269853530873224, 0.0629695902724135763},
    {0.4701420641051150898, 0.4701420641051150898, 0.06619707639425309037},
    {0.05971587178976982046, 0.4701420641051150898, 0.06619707639425309037},
    {0.4701420641051150898, 0.05971587178976982046, 0.06619707639425309037}
};

// degree 6, 12 points (x, y, w)

inline constexpr double kTri6[][3] = {
    {0.2492867451709104213, 0.2492867451709104213, 0.05839313786318968301},
    {0.5014265096581791574, 0.2492867451709104213, 0.05839313786318968301},
    {0.2492867451709104213, 0.5014265096581791574, 0.05839313786318968301},
    {0.06308901449150222834, 0.06308901449150222834, 0.02542245318510340846},
    {0.8738219710169955433, 0.06308901449150222834, 0.02542245318510340846},
    {0.06308901449150222834, 0.8738219710169955433, 0.02542245318510340846},
    {0.3103524510337844054, 0.6365024991213986472, 0.0414255378091867876},
    {0.6365024991213986472, 0.3103524510337844054, 0.0414255378091867876},
    {0.3103524510337844054, 0.05314504984481694735, 0.0414255378091867876},
    {0.05314504984481694735, 0.3103524510337844054, 0.0414255378091867876},
    {0.6365024991213986472, 0.05314504984481694735, 0.0414255378091867876},
    {0.05314504984481694735, 0.6365024991213986472, 0.0414255378091867876}
};

// degree 8, 16 points (x, y, w)

inline constexpr double kTri8[][3] = {
    {0.3333333333333333333, 0.3333333333333333333, 0.07215780383889358413},
    {0.459292588292723156, 0.459292588292723156, 0.0475458171336423124},
    {0.08141482341455368794, 0.459292588292723156, 0.0475458171336423124},
    {0.459292588292723156, 0.08141482341455368794, 0.0475458171336423124},
    {0.1705693077517602066, 0.1705693077517602066, 0.05160868526735912514},
    {0.6588613844964795868, 0.1705693077517602066, 0.05160868526735912514},
    {0.1705693077517602066, 0.6588613844964795868, 0.05160868526735912514},
    {0.05054722831703097546, 0.05054722831703097546, 0.01622924881159904016},
    {0.8989055433659380491, 0.05054722831703097546, 0.01622924881159904016},
    {0.05054722831703097546, 0.8989055433659380491, 0.01622924881159904016},
    {0.2631128296346381134, 0.7284923929554042812, 0.01361515708721749713},
    {0.7284923929554042812, 0.2631128296346381134, 0.01361515708721749713},
    {0.2631128296346381134, 0.008394777409957605337, 0.01361515708721749713},
    {0.008394777409957605337, 0.2631128296346381134, 0.01361515708721749713},
    {0.7284923929554042812, 0.008394777409957605337, 0.01361515708721749713},
    {0.008394777409957605337, 0.7284923929554042812, 0.01361515708721749713}
};

// degree 10, 25 points (x, y, w)

inline constexpr double kTri10[][3] = {
    {0.3333333333333333333, 0.3333333333333333333, 0.04540899519137679005},
    {0.4855776333836573774, 0.4855776333836573774, 0.01836297887823335236},
    {0.02884473323268524526, 0.4855776333836573774, 0.01836297887823335236},
    {0.4855776333836573774, 0.02884473323268524526, 0.01836297887823335236},
    {0.1094815754850370548, 0.1094815754850370548, 0.02266052971776396739},
    {0.7810368490299258904, 0.1094815754850370548, 0.02266052971776396739},
    {0.1094815754850370548, 0.7810368490299258904, 0.02266052971776396739},
    {0.00954081540029945758, 0.9236559335875002766, 0.00471083348186641173},
    {0.9236559335875002766, 0.00954081540029945758, 0.00471083348186641173},
    {0.00954081540029945758, 0.06680325101220026577, 0.00471083348186641173},
    {0.06680325101220026577, 0.00954081540029945758, 0.00471083348186641173},
    {0.9236559335875002766, 0.06680325101220026577, 0.00471083348186641173},
    {0.06680325101220026577, 0.9236559335875002766, 0.00471083348186641173},
    {0.3079398387641209502, 0.5503529418209990951, 0.0363789584227100543},
    {0.5503529418209990951, 0.3079398387641209502, 0.0363789584227100543},
    {0.3079398387641209502, 0.1417072194148799548, 0.0363789584227100543},
    {0.1417072194148799548, 0.3079398387641209502, 0.0363789584227100543},
    {0.5503529418209990951, 0.1417072194148799548, 0.0363789584227100543},
    {0.1417072194148799548, 0.5503529418209990951, 0.0363789584227100543},
    {0.2466725606399026939, 0.02500353476268638607, 0.01416362126552874242},
    {0.02500353476268638607, 0.2466725606399026939, 0.01416362126552874242},
    {0.2466725606399026939, 0.72832390459741092, 0.01416362126552874242},
    {0.72832390459741092, 0.2466725606399026939, 0.01416362126552874242},
    {0.02500353476268638607, 0.72832390459741092, 0.01416362126552874242},
    {0.72832390459741092, 0.02500353476268638607, 0.01416362126552874242}
};


} // namespace nlfem::detail
