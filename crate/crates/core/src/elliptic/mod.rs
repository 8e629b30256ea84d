//! The coefficient polynomials `J_n(x)` of the Jacobian elliptic functions,
//! the triangles that refine them, and their gamma certificates.

mod decomp;
mod jroutes;
mod triangles;

pub use decomp::{
    bi_gamma_closure, j_even_decomposition, j_even_decompositions, j_odd_gamma,
    random_closure_instance, ClosureTerm, EvenDecomposition,
};
pub use jroutes::{
    compare_routes, j_from_p, j_from_triangle, j_operator, j_recurrence, j_sequence, j_series,
    j_viennot, EllipticFn, EllipticSeries, JSequence, Route, SeriesReport,
};
pub use triangles::{
    check_gamma_t, gamma_from_p, validate_triangle, gamma_triangle_recurrence, p_poly, s_poly, s_triangle_operator,
    s_triangle_recurrence, t_polys, t_row_poly, t_triangle_recurrence,
};
