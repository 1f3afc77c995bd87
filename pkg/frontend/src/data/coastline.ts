/** Bundled, heavily simplified world coastline: a few dozen points per
 * landmass, just enough silhouette to anchor heatmap cells. Keeps the
 * heatmap view hermetic (no tile services). Coordinates are [lon, lat]. */

export type Polygon = [number, number][];

export const COASTLINE: Polygon[] = [
  // North America
  [[-168, 66], [-158, 71], [-140, 70], [-125, 70], [-110, 72], [-95, 72], [-82, 70],
   [-70, 62], [-55, 52], [-65, 45], [-70, 42], [-74, 39], [-80, 31], [-81, 25],
   [-84, 30], [-90, 29], [-96, 26], [-97, 21], [-94, 17], [-83, 9], [-79, 8],
   [-85, 13], [-92, 15], [-97, 16], [-105, 21], [-110, 24], [-114, 30], [-120, 34],
   [-124, 40], [-124, 47], [-130, 54], [-140, 59], [-152, 58], [-165, 55], [-168, 66]],
  // South America
  [[-79, 8], [-77, 4], [-80, -3], [-81, -6], [-77, -12], [-70, -18], [-70, -25],
   [-71, -32], [-73, -40], [-74, -50], [-69, -55], [-65, -55], [-68, -50], [-65, -41],
   [-62, -39], [-58, -34], [-53, -34], [-48, -28], [-42, -23], [-39, -15], [-35, -9],
   [-35, -6], [-44, -3], [-50, 0], [-52, 4], [-60, 8], [-64, 10], [-72, 12], [-77, 9], [-79, 8]],
  // Eurasia
  [[-10, 36], [-9, 43], [-2, 48], [1, 51], [5, 53], [8, 56], [10, 59], [18, 63],
   [25, 71], [40, 68], [60, 69], [80, 73], [100, 77], [130, 72], [150, 70], [170, 67],
   [178, 65], [162, 60], [160, 53], [142, 47], [135, 43], [130, 35], [122, 31],
   [121, 23], [108, 12], [104, 2], [98, 8], [92, 14], [88, 22], [80, 15], [77, 8],
   [72, 19], [67, 24], [57, 26], [52, 24], [48, 30], [44, 38], [36, 36], [30, 31],
   [27, 37], [22, 38], [18, 40], [15, 38], [12, 44], [5, 43], [0, 39], [-6, 37], [-10, 36]],
  // Africa
  [[-6, 35], [-17, 21], [-17, 15], [-12, 8], [-8, 5], [0, 6], [9, 4], [9, -2],
   [13, -12], [12, -18], [15, -27], [18, -34], [26, -34], [33, -27], [36, -19],
   [40, -11], [40, -3], [43, 0], [51, 12], [44, 11], [38, 18], [35, 27], [32, 31],
   [23, 32], [10, 34], [-6, 35]],
  // Australia
  [[114, -22], [114, -34], [120, -34], [130, -32], [138, -35], [141, -38], [147, -39],
   [150, -37], [153, -28], [153, -25], [146, -18], [142, -11], [136, -12], [132, -11],
   [126, -14], [122, -18], [114, -22]],
  // Greenland
  [[-45, 60], [-53, 66], [-55, 71], [-58, 76], [-68, 76], [-60, 82], [-40, 83],
   [-22, 82], [-20, 75], [-22, 70], [-32, 68], [-40, 65], [-45, 60]],
];
