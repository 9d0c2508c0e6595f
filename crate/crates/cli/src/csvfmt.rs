//! Fixed-format float printing for byte-deterministic CSV output.

/// Formats with 9 significant digits: plain decimal for |v| in
/// [1e-4, 1e6), lowercase exponent notation otherwise. An empty string
/// never comes out of here; blank cells are the caller's business.
pub fn fmt_sig9(v: f64) -> String {
    if v == 0.0 {
        return "0.00000000".to_owned();
    }
    let a = v.abs();
    if (1e-4..1e6).contains(&a) {
        let exponent = a.log10().floor() as i32;
        let decimals = (8 - exponent).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.8e}")
    }
}

/// Joins cells into one CSV line; `None` becomes a blank field.
pub fn row(cells: &[Option<f64>]) -> String {
    let fields: Vec<String> = cells
        .iter()
        .map(|c| c.map(fmt_sig9).unwrap_or_default())
        .collect();
    fields.join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt_sig9(0.0), "0.00000000");
        assert_eq!(fmt_sig9(1.0), "1.00000000");
        assert_eq!(fmt_sig9(-0.123456789), "-0.123456789");
        assert_eq!(fmt_sig9(123456.789), "123456.789");
        assert_eq!(fmt_sig9(0.000123456789), "0.000123456789");
    }

    #[test]
    fn exponent_form_outside_the_plain_window() {
        assert_eq!(fmt_sig9(1e-5), "1.00000000e-5");
        assert_eq!(fmt_sig9(2.5e7), "2.50000000e7");
    }

    #[test]
    fn blank_cell_for_none() {
        assert_eq!(row(&[Some(1.0), None, Some(0.5)]), "1.00000000,,0.500000000");
    }
}
