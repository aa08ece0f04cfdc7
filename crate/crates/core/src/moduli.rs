//! Smallest primitive monic polynomial for every p^m <= 2^16 with m >= 2.
//! Coefficients are listed low to high. Degree-one fields use x - g with g
//! the smallest primitive root mod p and are computed on demand.

pub(crate) static PRIMITIVE_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 12, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1]),
    (2, 13, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 14, &[1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 15, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 16, &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 2, &[2, 1, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (3, 7, &[1, 2, 1, 0, 0, 0, 0, 1]),
    (3, 8, &[2, 0, 0, 1, 0, 0, 0, 0, 1]),
    (3, 9, &[1, 0, 1, 2, 0, 0, 0, 0, 0, 1]),
    (3, 10, &[2, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (5, 2, &[2, 1, 1]),
    (5, 3, &[2, 3, 0, 1]),
    (5, 4, &[2, 2, 1, 0, 1]),
    (5, 5, &[2, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (7, 2, &[3, 1, 1]),
    (7, 3, &[2, 3, 0, 1]),
    (7, 4, &[5, 3, 1, 0, 1]),
    (7, 5, &[4, 1, 0, 0, 0, 1]),
    (11, 2, &[7, 1, 1]),
    (11, 3, &[4, 1, 0, 1]),
    (11, 4, &[2, 1, 0, 0, 1]),
    (13, 2, &[2, 1, 1]),
    (13, 3, &[6, 1, 0, 1]),
    (13, 4, &[2, 1, 1, 0, 1]),
    (17, 2, &[3, 1, 1]),
    (17, 3, &[3, 1, 0, 1]),
    (19, 2, &[2, 1, 1]),
    (19, 3, &[4, 1, 0, 1]),
    (23, 2, &[7, 1, 1]),
    (23, 3, &[3, 1, 0, 1]),
    (29, 2, &[3, 1, 1]),
    (29, 3, &[11, 1, 0, 1]),
    (31, 2, &[12, 1, 1]),
    (31, 3, &[14, 1, 0, 1]),
    (37, 2, &[5, 1, 1]),
    (37, 3, &[13, 1, 0, 1]),
    (41, 2, &[12, 1, 1]),
    (43, 2, &[3, 1, 1]),
    (47, 2, &[13, 1, 1]),
    (53, 2, &[5, 1, 1]),
    (59, 2, &[2, 1, 1]),
    (61, 2, &[2, 1, 1]),
    (67, 2, &[12, 1, 1]),
    (71, 2, &[11, 1, 1]),
    (73, 2, &[11, 1, 1]),
    (79, 2, &[3, 1, 1]),
    (83, 2, &[2, 1, 1]),
    (89, 2, &[6, 1, 1]),
    (97, 2, &[5, 1, 1]),
    (101, 2, &[3, 1, 1]),
    (103, 2, &[5, 1, 1]),
    (107, 2, &[5, 1, 1]),
    (109, 2, &[6, 1, 1]),
    (113, 2, &[10, 1, 1]),
    (127, 2, &[3, 1, 1]),
    (131, 2, &[14, 1, 1]),
    (137, 2, &[6, 1, 1]),
    (139, 2, &[2, 1, 1]),
    (149, 2, &[3, 1, 1]),
    (151, 2, &[12, 1, 1]),
    (157, 2, &[6, 1, 1]),
    (163, 2, &[11, 1, 1]),
    (167, 2, &[5, 1, 1]),
    (173, 2, &[5, 1, 1]),
    (179, 2, &[7, 1, 1]),
    (181, 2, &[18, 1, 1]),
    (191, 2, &[19, 1, 1]),
    (193, 2, &[5, 1, 1]),
    (197, 2, &[3, 1, 1]),
    (199, 2, &[6, 1, 1]),
    (211, 2, &[3, 1, 1]),
    (223, 2, &[5, 1, 1]),
    (227, 2, &[5, 1, 1]),
    (229, 2, &[6, 1, 1]),
    (233, 2, &[3, 1, 1]),
    (239, 2, &[13, 1, 1]),
    (241, 2, &[13, 1, 1]),
    (251, 2, &[19, 1, 1]),
];
