#include "chromac/color/tables.hpp"

namespace chromac::color::tables {

// Stockman & Sharpe (2000) 2-degree cone fundamentals, energy units, sampled at 5 nm.
const std::array<std::array<double, 3>, kBands> kConeFundamentals2Deg = {{
    {0.000415003, 0.000368349, 0.00954729},  // 390
    {0.00105192, 0.000958658, 0.023825},  // 395
    {0.00240836, 0.00226991, 0.0566498},  // 400
    {0.00483339, 0.0047001, 0.122451},  // 405
    {0.00872127, 0.00879369, 0.233008},  // 410
    {0.0133837, 0.0145277, 0.381363},  // 415
    {0.018448, 0.0216649, 0.543618},  // 420
    {0.0229317, 0.0295714, 0.674474},  // 425
    {0.0281877, 0.0394566, 0.802555},  // 430
    {0.0341054, 0.0518199, 0.903573},  // 435
    {0.0402563, 0.0647782, 0.99102},  // 440
    {0.044938, 0.0758812, 0.991515},  // 445
    {0.0498639, 0.0870524, 0.955393},  // 450
    {0.0553418, 0.0981934, 0.86024},  // 455
    {0.0647164, 0.116272, 0.786704},  // 460
    {0.0806894, 0.144541, 0.738268},  // 465
    {0.0994755, 0.175893, 0.646359},  // 470
    {0.118802, 0.205398, 0.516411},  // 475
    {0.140145, 0.235754, 0.390333},  // 480
    {0.163952, 0.268063, 0.290322},  // 485
    {0.191556, 0.30363, 0.211867},  // 490
    {0.232926, 0.357061, 0.160526},  // 495
    {0.288959, 0.427764, 0.122839},  // 500
    {0.359716, 0.515587, 0.0888965},  // 505
    {0.443683, 0.61552, 0.060821},  // 510
    {0.536494, 0.719154, 0.0428123},  // 515
    {0.628561, 0.81661, 0.0292033},  // 520
    {0.70472, 0.88555, 0.0193912},  // 525
    {0.77063, 0.935687, 0.0126013},  // 530
    {0.825711, 0.968858, 0.00809453},  // 535
    {0.881011, 0.995217, 0.005089},  // 540
    {0.919067, 0.997193, 0.00316893},  // 545
    {0.940198, 0.977193, 0.00195896},  // 550
    {0.965733, 0.956583, 0.00120277},  // 555
    {0.981445, 0.91775, 0.000740174},  // 560
    {0.994486, 0.873205, 0.000455979},  // 565
    {0.999993, 0.813509, 0.0002818},  // 570
    {0.99231, 0.740291, 0.000175039},  // 575
    {0.969429, 0.653274, 0.000109454},  // 580
    {0.955602, 0.572597, 6.89991e-05},  // 585
    {0.927673, 0.492599, 4.39024e-05},  // 590
    {0.885969, 0.411246, 2.82228e-05},  // 595
    {0.833982, 0.334429, 1.83459e-05},  // 600
    {0.775103, 0.264872, 1.20667e-05},  // 605
    {0.705713, 0.205273, 8.03488e-06},  // 610
    {0.630773, 0.156243, 5.41843e-06},  // 615
    {0.554224, 0.116641, 0},  // 620
    {0.479941, 0.0855872, 0},  // 625
    {0.400711, 0.062112, 0},  // 630
    {0.327864, 0.0444879, 0},  // 635
    {0.265784, 0.0314282, 0},  // 640
    {0.213284, 0.0218037, 0},  // 645
    {0.165141, 0.015448, 0},  // 650
    {0.124749, 0.010712, 0},  // 655
    {0.0930085, 0.00730255, 0},  // 660
    {0.06851, 0.00497179, 0},  // 665
    {0.0498661, 0.00343667, 0},  // 670
    {0.0358233, 0.00237617, 0},  // 675
    {0.025379, 0.00163734, 0},  // 680
    {0.0177201, 0.00112128, 0},  // 685
    {0.0121701, 0.000761051, 0},  // 690
    {0.0084717, 0.000525457, 0},  // 695
    {0.00589749, 0.000365317, 0},  // 700
    {0.00409129, 0.000253417, 0},  // 705
    {0.00280447, 0.000174402, 0},  // 710
    {0.00192058, 0.000120608, 0},  // 715
    {0.00132687, 8.41716e-05, 0},  // 720
    {0.000917777, 5.89349e-05, 0},  // 725
    {0.000639373, 4.16049e-05, 0},  // 730
    {0.000446035, 2.94354e-05, 0},  // 735
    {0.000310869, 2.0886e-05, 0},  // 740
    {0.000219329, 1.50458e-05, 0},  // 745
    {0.000154549, 1.082e-05, 0},  // 750
    {0.000109508, 7.82271e-06, 0},  // 755
    {7.79912e-05, 5.69093e-06, 0},  // 760
    {5.56264e-05, 4.13998e-06, 0},  // 765
    {3.99295e-05, 3.02683e-06, 0},  // 770
    {2.86163e-05, 2.211e-06, 0},  // 775
    {2.07321e-05, 1.63433e-06, 0},  // 780
    {1.50432e-05, 1.21054e-06, 0},  // 785
    {1.09446e-05, 8.9917e-07, 0},  // 790
    {7.9775e-06, 6.69594e-07, 0},  // 795
    {5.85057e-06, 5.03187e-07, 0},  // 800
    {4.31102e-06, 3.80046e-07, 0},  // 805
    {3.17009e-06, 2.86329e-07, 0},  // 810
    {2.34468e-06, 2.16878e-07, 0},  // 815
    {1.74666e-06, 1.65158e-07, 0},  // 820
    {1.30241e-06, 1.25508e-07, 0},  // 825
    {9.74306e-07, 9.53411e-08, 0},  // 830
}};

// CIE standard illuminant D65 relative SPD; the CIE table stops at 780 nm here, later bands are zero.
const std::array<double, kBands> kD65RelativeSpd = {
    54.6482, 68.7015, 82.7549, 87.1204, 91.486, 92.4589,
    93.4318, 90.057, 86.6823, 95.7736, 104.865, 110.936,
    117.008, 117.41, 117.812, 116.336, 114.861, 115.392,
    115.923, 112.367, 108.811, 109.082, 109.354, 108.578,
    107.802, 106.296, 104.79, 106.239, 107.689, 106.047,
    104.405, 104.225, 104.046, 102.023, 100.0, 98.1671,
    96.3342, 96.0611, 95.788, 92.2368, 88.6856, 89.3459,
    90.0062, 89.8026, 89.5991, 88.6489, 87.6987, 85.4936,
    83.2886, 83.4939, 83.6992, 81.863, 80.0268, 80.1207,
    80.2146, 81.2462, 82.2778, 80.281, 78.2842, 74.0027,
    69.7213, 70.6652, 71.6091, 72.979, 74.349, 67.9765,
    61.604, 65.7448, 69.8856, 72.4863, 75.087, 69.3398,
    63.5927, 55.0054, 46.4182, 56.6118, 66.8054, 65.0941,
    63.3828, 0.0, 0.0, 0.0, 0.0, 0.0,
    0.0, 0.0, 0.0, 0.0, 0.0,
};

}  // namespace chromac::color::tables
