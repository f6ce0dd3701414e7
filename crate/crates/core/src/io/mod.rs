//! File formats: MatrixMarket matrices, edge lists, factorization JSON.

mod edge_list;
mod factorization_json;
mod matrix_market;

pub use edge_list::{format_edge_list, parse_edge_list, read_edge_list};
pub use factorization_json::{factorization_from_json, factorization_to_json, read_factorization, write_factorization};
pub use matrix_market::{
    format_dense_array, format_matrix_market, parse_dense_array, parse_matrix_market, read_dense_array,
    read_matrix, write_dense_array, write_matrix,
};
