//! Published per-journal fits: lognormal and hooked parameters, their
//! log-likelihoods, the Vuong statistic and the winner label.

// alpha and offset are carried for reference; no criterion checks them
#[allow(dead_code)]
pub struct Row {
    pub journal: &'static str,
    pub articles: usize,
    pub mu: f64,
    pub sigma: f64,
    pub ll_lognormal: f64,
    pub alpha: f64,
    pub alpha_capped: bool,
    pub offset: f64,
    pub ll_hooked: f64,
    pub z: f64,
    pub best: &'static str,
}

#[rustfmt::skip]
pub const ROWS: [Row; 50] = [
    Row { journal: "Acta Crystallographica Section E", articles: 4218, mu: 0.93, sigma: 0.86, ll_lognormal: -9159.8, alpha: 11.7, alpha_capped: false, offset: 30.8, ll_hooked: -9179.4, z: -2.58, best: "L*" },
    Row { journal: "Angewandte Chemie", articles: 1362, mu: 3.89, sigma: 0.91, ll_lognormal: -7095.7, alpha: 24.2, alpha_capped: false, offset: 1607.4, ll_hooked: -7193.7, z: -7.76, best: "L*" },
    Row { journal: "Applied Mathematics & Computation", articles: 1243, mu: 2.09, sigma: 1.12, ll_lognormal: -4490.0, alpha: 6.0, alpha_capped: false, offset: 54.9, ll_hooked: -4481.9, z: 1.52, best: "H" },
    Row { journal: "Applied Physics Letters", articles: 6103, mu: 2.94, sigma: 1.03, ll_lognormal: -26825.0, alpha: 7.7, alpha_capped: false, offset: 175.4, ll_hooked: -26963.0, z: -6.59, best: "L*" },
    Row { journal: "Applied Surface Science", articles: 1545, mu: 2.37, sigma: 1.03, ll_lognormal: -5899.3, alpha: 7.1, alpha_capped: false, offset: 88.5, ll_hooked: -5925.7, z: -3.04, best: "L*" },
    Row { journal: "Astronomy & Astrophysics", articles: 1864, mu: 2.97, sigma: 1.00, ll_lognormal: -8192.4, alpha: 10.5, alpha_capped: false, offset: 261.1, ll_hooked: -8245.5, z: -4.33, best: "L*" },
    Row { journal: "Astrophysical Journal", articles: 2688, mu: 3.36, sigma: 0.97, ll_lognormal: -12755.5, alpha: 10.9, alpha_capped: false, offset: 394.7, ll_hooked: -12878.9, z: -7.13, best: "L*" },
    Row { journal: "Biochemical & Biophysical Res. Comm.", articles: 2335, mu: 2.84, sigma: 0.88, ll_lognormal: -9650.8, alpha: 11.9, alpha_capped: false, offset: 245.8, ll_hooked: -9822.4, z: -10.00, best: "L*" },
    Row { journal: "Biochemistry", articles: 1599, mu: 3.07, sigma: 0.74, ll_lognormal: -6695.0, alpha: 358.2, alpha_capped: false, offset: 9986.7, ll_hooked: -6929.7, z: -12.64, best: "L*" },
    Row { journal: "Bioorganic & Medicinal Chemistry Lett.", articles: 1240, mu: 2.93, sigma: 0.73, ll_lognormal: -5007.9, alpha: 10_000.0, alpha_capped: true, offset: 250153.0, ll_hooked: -5167.0, z: -10.12, best: "L*" },
    Row { journal: "Brain Research", articles: 1375, mu: 2.86, sigma: 0.89, ll_lognormal: -5725.5, alpha: 22.4, alpha_capped: false, offset: 511.9, ll_hooked: -5808.7, z: -6.56, best: "L*" },
    Row { journal: "Cancer Research", articles: 1428, mu: 4.00, sigma: 0.79, ll_lognormal: -7399.7, alpha: 29.5, alpha_capped: false, offset: 2064.5, ll_hooked: -7593.2, z: -11.00, best: "L*" },
    Row { journal: "Chemical Physics Letters", articles: 1650, mu: 2.52, sigma: 0.96, ll_lognormal: -6446.7, alpha: 10.8, alpha_capped: false, offset: 165.7, ll_hooked: -6494.5, z: -4.13, best: "L*" },
    Row { journal: "Chinese J. of Clinical Rehabilitation", articles: 2668, mu: -0.30, sigma: 0.77, ll_lognormal: -2203.3, alpha: 7.1, alpha_capped: false, offset: 3.3, ll_hooked: -2203.7, z: -0.61, best: "L" },
    Row { journal: "Geophysical Research Letters", articles: 1636, mu: 3.01, sigma: 0.97, ll_lognormal: -7193.2, alpha: 9.2, alpha_capped: false, offset: 225.1, ll_hooked: -7256.1, z: -4.68, best: "L*" },
    Row { journal: "Inorganic Chemistry", articles: 1432, mu: 3.25, sigma: 0.85, ll_lognormal: -6457.1, alpha: 10_000.0, alpha_capped: true, offset: 363813.0, ll_hooked: -6567.0, z: -7.09, best: "L*" },
    Row { journal: "Jane's Defence Industry", articles: 1320, mu: -0.09, sigma: 0.19, ll_lognormal: -38.3, alpha: 10_000.0, alpha_capped: true, offset: 1853.0, ll_hooked: -38.4, z: 0.00, best: "L" },
    Row { journal: "Jane's Defence Weekly", articles: 1975, mu: -7.23, sigma: 1.34, ll_lognormal: -134.3, alpha: 6.5, alpha_capped: false, offset: 0.0, ll_hooked: -134.3, z: -0.02, best: "L" },
    Row { journal: "Japanese J. of Applied Physics Part 1", articles: 2229, mu: 1.75, sigma: 1.10, ll_lognormal: -7241.5, alpha: 4.6, alpha_capped: false, offset: 25.6, ll_hooked: -7241.9, z: -0.10, best: "L" },
    Row { journal: "Jisuanji Gongcheng Computer Eng.", articles: 1945, mu: -0.35, sigma: 0.97, ll_lognormal: -2188.0, alpha: 4.6, alpha_capped: false, offset: 2.3, ll_hooked: -2188.7, z: -0.54, best: "L" },
    Row { journal: "J. of Agricultural & Food Chemistry", articles: 1448, mu: 3.23, sigma: 0.83, ll_lognormal: -6465.7, alpha: 108.3, alpha_capped: false, offset: 3708.5, ll_hooked: -6591.9, z: -7.64, best: "L*" },
    Row { journal: "J. of Applied Physics", articles: 3570, mu: 2.32, sigma: 1.11, ll_lognormal: -13714.1, alpha: 5.6, alpha_capped: false, offset: 63.7, ll_hooked: -13712.3, z: 0.15, best: "H" },
    Row { journal: "J. of Applied Polymer Science", articles: 2438, mu: 2.24, sigma: 0.95, ll_lognormal: -8805.0, alpha: 17.4, alpha_capped: false, offset: 212.3, ll_hooked: -8838.7, z: -2.38, best: "L*" },
    Row { journal: "J. of Biological Chemistry", articles: 4306, mu: 3.62, sigma: 0.75, ll_lognormal: -20432.3, alpha: 10_000.0, alpha_capped: true, offset: 492666.0, ll_hooked: -21050.1, z: -21.15, best: "L*" },
    Row { journal: "J. of Chemical Physics", articles: 2870, mu: 2.70, sigma: 1.00, ll_lognormal: -11818.1, alpha: 7.1, alpha_capped: false, offset: 120.1, ll_hooked: -11900.3, z: -5.23, best: "L*" },
    Row { journal: "J. of Immunology", articles: 1806, mu: 3.64, sigma: 0.82, ll_lognormal: -8782.4, alpha: 155.4, alpha_capped: false, offset: 8030.2, ll_hooked: -8953.9, z: -7.33, best: "L*" },
    Row { journal: "J. of Neuroscience", articles: 1325, mu: 4.12, sigma: 0.73, ll_lognormal: -6929.2, alpha: 10_000.0, alpha_capped: true, offset: 816584.0, ll_hooked: -7144.0, z: -14.35, best: "L*" },
    Row { journal: "J. of Organic Chemistry", articles: 1469, mu: 3.25, sigma: 0.80, ll_lognormal: -6525.7, alpha: 10_000.0, alpha_capped: true, offset: 348732.0, ll_hooked: -6666.4, z: -8.15, best: "L*" },
    Row { journal: "J. of Physical Chemistry A", articles: 1686, mu: 2.83, sigma: 0.93, ll_lognormal: -7040.4, alpha: 11.7, alpha_capped: false, offset: 244.1, ll_hooked: -7121.1, z: -5.61, best: "L*" },
    Row { journal: "J. of Physical Chemistry B", articles: 3617, mu: 3.24, sigma: 1.00, ll_lognormal: -16846.7, alpha: 6.8, alpha_capped: false, offset: 195.6, ll_hooked: -17007.1, z: -8.76, best: "L*" },
    Row { journal: "J. of Power Sources", articles: 1475, mu: 3.32, sigma: 0.99, ll_lognormal: -6982.0, alpha: 22.9, alpha_capped: false, offset: 884.8, ll_hooked: -6998.6, z: -1.17, best: "L" },
    Row { journal: "J. of the American Chemical Soc.", articles: 3254, mu: 3.99, sigma: 0.88, ll_lognormal: -17173.8, alpha: 14.4, alpha_capped: false, offset: 988.4, ll_hooked: -17483.0, z: -15.29, best: "L*" },
    Row { journal: "J. of Virology", articles: 1232, mu: 3.56, sigma: 0.79, ll_lognormal: -5855.1, alpha: 10_000.0, alpha_capped: true, offset: 482021.0, ll_hooked: -5992.2, z: -10.87, best: "L*" },
    Row { journal: "Langmuir", articles: 1696, mu: 3.32, sigma: 0.93, ll_lognormal: -7898.3, alpha: 13.3, alpha_capped: false, offset: 466.6, ll_hooked: -8006.1, z: -8.88, best: "L*" },
    Row { journal: "Macromolecules", articles: 1263, mu: 3.37, sigma: 0.90, ll_lognormal: -5914.2, alpha: 67.1, alpha_capped: false, offset: 2743.6, ll_hooked: -5988.6, z: -5.80, best: "L*" },
    Row { journal: "Materials Science & Eng. A", articles: 1490, mu: 2.68, sigma: 1.00, ll_lognormal: -6111.8, alpha: 13.7, alpha_capped: false, offset: 263.4, ll_hooked: -6133.8, z: -2.06, best: "L*" },
    Row { journal: "Monthly Not. R. Astronomical Soc.", articles: 1352, mu: 3.15, sigma: 1.07, ll_lognormal: -6280.5, alpha: 5.2, alpha_capped: false, offset: 131.7, ll_hooked: -6317.9, z: -4.06, best: "L*" },
    Row { journal: "Nuclear Instruments & Meth. Physics A", articles: 1569, mu: 1.74, sigma: 1.12, ll_lognormal: -5109.7, alpha: 4.2, alpha_capped: false, offset: 21.6, ll_hooked: -5113.6, z: -1.09, best: "L" },
    Row { journal: "Optics Express", articles: 1324, mu: 3.08, sigma: 1.07, ll_lognormal: -6045.0, alpha: 8.2, alpha_capped: false, offset: 221.6, ll_hooked: -6056.6, z: -1.21, best: "L" },
    Row { journal: "Organic Letters", articles: 1524, mu: 3.44, sigma: 0.80, ll_lognormal: -7068.0, alpha: 10_000.0, alpha_capped: true, offset: 429455.0, ll_hooked: -7237.2, z: -9.57, best: "L*" },
    Row { journal: "Physica B Condensed Matter", articles: 1275, mu: 1.30, sigma: 1.15, ll_lognormal: -3622.7, alpha: 3.9, alpha_capped: false, offset: 12.6, ll_hooked: -3620.9, z: 1.02, best: "H" },
    Row { journal: "Physical Review A", articles: 2080, mu: 2.60, sigma: 0.99, ll_lognormal: -8330.2, alpha: 22.1, alpha_capped: false, offset: 409.0, ll_hooked: -8347.5, z: -1.30, best: "L" },
    Row { journal: "Physical Review B", articles: 5603, mu: 2.73, sigma: 1.02, ll_lognormal: -23358.8, alpha: 5.9, alpha_capped: false, offset: 98.1, ll_hooked: -23537.3, z: -9.70, best: "L*" },
    Row { journal: "Physical Review D", articles: 2305, mu: 2.85, sigma: 1.16, ll_lognormal: -10185.3, alpha: 5.4, alpha_capped: false, offset: 106.1, ll_hooked: -10177.5, z: 0.83, best: "H" },
    Row { journal: "Physical Review E", articles: 2448, mu: 2.48, sigma: 1.06, ll_lognormal: -9686.4, alpha: 5.7, alpha_capped: false, offset: 73.5, ll_hooked: -9721.2, z: -3.29, best: "L*" },
    Row { journal: "Physical Review Letters", articles: 3760, mu: 3.52, sigma: 0.99, ll_lognormal: -18515.2, alpha: 7.7, alpha_capped: false, offset: 306.1, ll_hooked: -18700.6, z: -9.88, best: "L*" },
    Row { journal: "PNAS", articles: 3297, mu: 4.24, sigma: 0.89, ll_lognormal: -18292.2, alpha: 18.5, alpha_capped: false, offset: 1659.6, ll_hooked: -18487.1, z: -4.66, best: "L*" },
    Row { journal: "Tetrahedron", articles: 1275, mu: 2.88, sigma: 0.76, ll_lognormal: -5139.1, alpha: 64.1, alpha_capped: false, offset: 1449.4, ll_hooked: -5292.0, z: -8.40, best: "L*" },
    Row { journal: "Tetrahedron Letters", articles: 1987, mu: 2.79, sigma: 0.81, ll_lognormal: -7951.2, alpha: 10_000.0, alpha_capped: true, offset: 219180.0, ll_hooked: -8122.1, z: -10.96, best: "L*" },
    Row { journal: "Thin Solid Films", articles: 1253, mu: 2.47, sigma: 1.03, ll_lognormal: -4907.4, alpha: 9.1, alpha_capped: false, offset: 133.4, ll_hooked: -4916.4, z: -1.02, best: "L" },
];
