use super::AnnotationError;

/// Fleiss' kappa of an items x categories table of rating counts. Every item
/// must be rated by the same number of annotators, at least two.
pub fn fleiss_kappa(table: &[Vec<u32>]) -> Result<f64, AnnotationError> {
    let first = table.first().ok_or_else(|| AnnotationError::RaggedTable("no items".into()))?;
    let k = first.len();
    let n: u32 = first.iter().sum();
    if n < 2 {
        return Err(AnnotationError::RaggedTable(format!("item 1 has {n} ratings, need at least 2")));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != k {
            return Err(AnnotationError::RaggedTable(format!("item {} has {} categories, expected {k}", i + 1, row.len())));
        }
        let s: u32 = row.iter().sum();
        if s != n {
            return Err(AnnotationError::RaggedTable(format!("item {} has {s} ratings, expected {n}", i + 1)));
        }
    }
    let items = table.len() as f64;
    let n = n as f64;
    let p_bar = table
        .iter()
        .map(|row| row.iter().map(|&c| c as f64 * (c as f64 - 1.0)).sum::<f64>() / (n * (n - 1.0)))
        .sum::<f64>()
        / items;
    let p_e: f64 = (0..k)
        .map(|j| {
            let p = table.iter().map(|row| row[j] as f64).sum::<f64>() / (items * n);
            p * p
        })
        .sum();
    if p_e >= 1.0 {
        // Every rating falls in one category: agreement is perfect.
        return Ok(1.0);
    }
    Ok((p_bar - p_e) / (1.0 - p_e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_agreement() {
        assert_eq!(fleiss_kappa(&[vec![3, 0], vec![0, 3], vec![3, 0]]).unwrap(), 1.0);
        assert_eq!(fleiss_kappa(&[vec![4, 0], vec![4, 0]]).unwrap(), 1.0);
    }

    #[test]
    fn systematic_disagreement_is_negative() {
        let t: Vec<Vec<u32>> = (0..20).map(|_| vec![1, 1]).collect();
        assert!(fleiss_kappa(&t).unwrap() < 0.0);
    }

    #[test]
    fn ragged() {
        assert!(matches!(fleiss_kappa(&[vec![2, 0], vec![1, 0]]), Err(AnnotationError::RaggedTable(_))));
        assert!(matches!(fleiss_kappa(&[vec![2, 0], vec![1, 0, 1]]), Err(AnnotationError::RaggedTable(_))));
        assert!(matches!(fleiss_kappa(&[vec![1, 0]]), Err(AnnotationError::RaggedTable(_))));
        assert!(matches!(fleiss_kappa(&[]), Err(AnnotationError::RaggedTable(_))));
    }
}
