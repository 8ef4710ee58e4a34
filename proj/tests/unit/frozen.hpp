#pragma once

// 50-digit reference values produced by tests/oracles/freeze_values.py.
namespace frozen {

inline constexpr double cosh1 = 1.5430806348152437785;
inline constexpr double sinh1 = 1.1752011936438014569;
inline constexpr double sinh_half = 0.52109530549374736162;
inline constexpr double metric_half_quarter = 1.1276259652063807852;  // Xi(0.5, pi/2), R = 1
inline constexpr double perimeter_half = 5.3563919543994665141;

inline constexpr double alpha_half[] = {0.5,
                                        0.1839397205857211608,
                                        0.067667641618306345947,
                                        0.02489353418393197149,
                                        0.0091578194443670901469,
                                        0.0033689734995427335483,
                                        0.0012393760883331792115};
inline constexpr double beta1_half = -1.1752011936438014569;

// (rho_i, rho_e) = (0.5, 0.8)
struct ThinRow {
  int n;
  double lambda1, lambda2;
};
inline constexpr ThinRow thin_lambda[] = {
    {1, -0.41422191004332198993, 0.33123044845492853337},
    {2, -0.29906577649398076644, 0.25177923686485752807},
    {3, -0.21393947216237216866, 0.19316081150295021159},
    {4, -0.15481816926845956997, 0.14649112846067944708},
    {10, -0.024904858607228402356, 0.02488221490993451956},
    {50, -1.529511602509129424e-7, 1.5295116025091284597e-7},
};

struct VecRow {
  int n;
  double a1, a2, b;
  double norm_1p, norm_1m, norm_2p, norm_2m;
};
inline constexpr VecRow thin_vec[] = {
    {1, 2.0606806761625987767, -0.92112875783040331651, -2.0267000274314609384, 3.5831478947212024854,
     7.8886324860321473585, 15.520991055453997382, 3.2578760131315388424},
    {10, 0.099619659499263047941, -0.09952863456938863972, -0.099578657394541848067,
     0.0029613622722321161231, 0.0032685497672032163051, 0.0032687055508454180959,
     0.002961234523003336122},
    {50, 6.1180464100365176962e-7, -6.1180464100365138387e-7, -6.1180464100365157674e-7,
     2.351826446488325526e-14, 2.35182788534709899e-14, 2.35182788534709899e-14,
     2.351826446488325526e-14},
};

// (rho_i, rho_e) = (0.2, 1.0)
struct ThickRow {
  int n;
  double lambda1, lambda2, a2;
  double norm_1p, norm_1m, norm_2p, norm_2m;
};
inline constexpr ThickRow thick[] = {
    {1, -0.39520779978483729578, 0.12771541838532399136, -0.24019110706807058164, 6.4596357746473422459,
     1.4129557808735227353, 5.0196641605242826303, 4.5294656434786816607},
    {10, -0.0091608894904263649916, 3.0710766360860640689e-6, -0.00001228018423709937916,
     0.00021485252483070383537, 7.2003398418048643989e-8, 7.3346800021078446716e-8,
     0.00021098816594384367587},
    {50, -1.0305768112192789184e-9, 4.3782553813482601506e-27, -1.7513021525393040528e-26,
     5.3386394183121532112e-19, 2.2680431490253849228e-36, 2.2680431537001702849e-36,
     5.338639407308397258e-19},
};

inline constexpr double green_cos_weight_12 = -0.095873095312989577863;  // rho0 = 1.2, w0 = 0, n = 1
inline constexpr double z001_re = -0.000012499687507812304692;
inline constexpr double z001_im = 0.0024999375015624609385;

}  // namespace frozen
