"""Reference values used by the reproduction tests.

Keys are redundancy (or size) vectors; values are copied digit for digit.
"""

# Example 1: (v1, v2) -> (Cost1 a=2, Cost2 a=2, Cost1 a=1, Cost2 a=1)
TABLE2 = {
    (0, 0): (6.33927, 8.2455, 9.36071, 9.70214),
    (0, 1): (6.81922, 9.44774, 9.38725, 10.3790),
    (0, 2): (7.5289, 11.3022, 9.87544, 11.9363),
    (1, 0): (5.20719, 7.77258, 7.09069, 8.48716),
    (1, 1): (5.82298, 9.2981, 7.51217, 9.7885),
    (1, 2): (6.35331, 10.7302, 7.98448, 11.3693),
    (2, 0): (4.99041, 9.13115, 6.56325, 9.88167),
    (2, 1): (5.58924, 10.7299, 7.06002, 11.4307),
    (2, 2): (6.13251, 12.28921, 7.53562, 13.0756),
    (3, 0): (5.04518, 11.137, 6.48197, 12.035),
    (3, 1): (5.59315, 12.7178, 6.98476, 13.6766),
    (3, 2): (6.11375, 14.2941, 7.45447, 15.3508),
}

# Gumbel sweep on Example 1
TABLE3_ALPHAS = (1.0, 1.2, 1.4, 1.6, 1.8, 2.0, 2.2, 2.4, 2.6, 2.8, 3.0)
TABLE3_COST1_V = ((3, 0),) * 2 + ((2, 0),) * 9
TABLE3_COST1 = (6.48, 5.98, 5.63, 5.36, 5.15, 4.99, 4.86, 4.75, 4.66, 4.58, 4.52)
TABLE3_COST2_V = ((1, 0),) * 11
TABLE3_COST2 = (8.48, 8.28, 8.11, 7.98, 7.87, 7.77, 7.69, 7.62, 7.57, 7.50, 7.46)

# cost sensitivity, Gumbel a=2: (c, c_star, v, Cost1); first and last row of each panel
TABLE4_PANELS = {
    "top_left": [((1.6, 1.1), (1.5, 1), (3, 0), 4.0492), ((4.5, 4), (1.5, 1), (2, 0), 6.2448)],
    "top_right": [((6, 5.5), (5.9, 5.4), (1, 0), 11.9478), ((6, 5.5), (3, 2.5), (2, 0), 8.9502)],
    "bottom_left": [((1.5, 2), (1, 1.5), (3, 0), 3.7874), ((6.5, 7), (1, 1.5), (2, 0), 7.4320)],
    "bottom_right": [((5.5, 6), (5, 5.5), (2, 0), 11.1232), ((5.5, 6), (0, 0.5), (3, 0), 5.7991)],
}
TABLE5_PANELS = {
    "left": [((3, 2), (1.5, 1), (2, 0), 4.9904), ((20, 2), (10, 1), (0, 1), 16.2052)],
    "right": [((2, 3), (1, 1.5), (3, 0), 4.2859), ((2, 20), (1, 10), (3, 0), 9.3402)],
}

# Example 1 with Exponential(0.2) / Weibull(2, 0.07) marginals
TABLE6_COST1_V = ((3, 0),) + ((2, 0),) * 10
TABLE6_COST1 = (6.53, 6.06, 5.71, 5.45, 5.25, 5.08, 4.95, 4.85, 4.76, 4.68, 4.62)

# Example 2: v -> (Cost1, tau*, Cost2(tau*))
TABLE7 = {
    (0, 0, 0): (39.0424, 0.300, 29.5929),
    (0, 1, 0): (37.4142, 0.375, 28.9959),
    (1, 0, 0): (42.1779, 0.365, 34.7858),
    (1, 1, 0): (39.0422, 0.450, 31.1106),
    (2, 0, 0): (47.4998, 0.405, 42.0378),
    (2, 1, 0): (43.0531, 0.490, 36.3495),
    (0, 0, 1): (42.2553, 0.326, 38.2377),
    (0, 1, 1): (41.2034, 0.367, 37.6403),
    (1, 0, 1): (44.1149, 0.391, 41.3141),
    (1, 1, 1): (41.9973, 0.463, 37.8883),
    (2, 0, 1): (48.5362, 0.445, 47.7900),
    (2, 1, 1): (45.5179, 0.503, 42.4445),
    (0, 0, 2): (45.5246, 0.350, 46.7613),
    (0, 1, 2): (44.8865, 0.410, 46.1258),
    (1, 0, 2): (46.1353, 0.412, 47.6364),
    (1, 1, 2): (44.8022, 0.480, 44.4306),
    (2, 0, 2): (49.7090, 0.455, 53.1287),
    (2, 1, 2): (47.7961, 0.520, 48.2148),
}

# Example 3: n -> (Cost3, Cost4)
TABLE8 = {
    (1, 1, 1): (10.3750, 18.2784),
    (1, 1, 2): (9.6460, 18.6515),
    (1, 1, 3): (10.0967, 21.2331),
    (1, 2, 1): (9.7277, 18.1732),
    (1, 2, 2): (8.8857, 18.1463),
    (1, 2, 3): (9.1886, 20.4388),
    (1, 3, 1): (10.0842, 19.8532),
    (1, 3, 2): (9.0989, 19.5615),
    (1, 3, 3): (9.3157, 21.7702),
    (2, 1, 1): (8.7073, 16.2100),
    (2, 1, 2): (7.9885, 16.1742),
    (2, 1, 3): (8.2879, 18.3280),
    (2, 2, 1): (8.0593, 15.8127),
    (2, 2, 2): (7.4747, 12.2278),
    (2, 2, 3): (7.4835, 13.5080),
    (2, 3, 1): (8.2888, 17.1959),
    (2, 3, 2): (7.4068, 13.0874),
    (2, 3, 3): (7.5279, 14.2977),
}
TABLE8_ARGMIN_COST3 = (2, 3, 2)
TABLE8_ARGMIN_COST4 = (2, 2, 2)

# Clayton sweep on Example 1
TABLE9_ALPHAS = (0.001, 0.1, 1.0, 2.0, 3.0, 4.0)
TABLE9_COST1_V = ((2, 0),) * 4 + ((3, 0),) * 2
TABLE9_COST1 = (3.71, 3.97, 5.26, 5.75, 5.98, 6.09)

# Example 1 signature, l -> phi (zero elsewhere)
TABLE1_NONZERO = {
    (1, 2): 1 / 9, (1, 3): 1 / 3, (2, 2): 4 / 9, (2, 3): 2 / 3,
    (3, 0): 1.0, (3, 1): 1.0, (3, 2): 1.0, (3, 3): 1.0,
}
