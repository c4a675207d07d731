#pragma once

// Independent transcription of the ten-stream 4K trace dataset used by the
// golden tests and the brute-force controller oracle. Deliberately separate
// from the library's own copy.

namespace golden {

struct Row {
    int stream;
    int qp;
    double psnr_db;
    double bitrate_kbps;
};

inline constexpr Row kRows[40] = {
    {1, 22, 41.64, 26496},  {1, 27, 39.11, 10658},  {1, 32, 36.61, 5073},  {1, 37, 34.00, 2621},
    {2, 22, 41.64, 26811},  {2, 27, 39.07, 10811},  {2, 32, 36.56, 5128},  {2, 37, 33.97, 2650},
    {3, 22, 41.60, 27888},  {3, 27, 39.00, 11279},  {3, 32, 36.48, 5320},  {3, 37, 33.91, 2721},
    {4, 22, 41.61, 27145},  {4, 27, 39.05, 10958},  {4, 32, 36.53, 5193},  {4, 37, 33.94, 2679},
    {5, 22, 41.63, 26535},  {5, 27, 39.08, 10710},  {5, 32, 36.57, 5095},  {5, 37, 33.98, 2636},
    {6, 22, 41.60, 27630},  {6, 27, 39.02, 11130},  {6, 32, 36.51, 5263},  {6, 37, 33.94, 2703},
    {7, 22, 41.61, 27766},  {7, 27, 39.01, 11237},  {7, 32, 36.49, 5303},  {7, 37, 33.91, 2714},
    {8, 22, 41.63, 26689},  {8, 27, 39.10, 10765},  {8, 32, 36.59, 5118},  {8, 37, 34.00, 2641},
    {9, 22, 41.62, 27083},  {9, 27, 39.06, 10902},  {9, 32, 36.56, 5181},  {9, 37, 33.97, 2678},
    {10, 22, 41.60, 28006}, {10, 27, 39.00, 11378}, {10, 32, 36.47, 5364}, {10, 37, 33.89, 2735},
};

}  // namespace golden
