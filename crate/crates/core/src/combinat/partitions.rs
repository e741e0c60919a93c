/// All set partitions of `{0, .., n-1}`, generated from restricted growth
/// strings in lexicographic order. Blocks are listed by their least element
/// and are sorted internally. `n = 0` yields the single empty partition.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == rgs.len() {
            let blocks = if rgs.is_empty() { 0 } else { max + 1 };
            let mut partition = vec![Vec::new(); blocks];
            for (elem, &b) in rgs.iter().enumerate() {
                partition[b].push(elem);
            }
            out.push(partition);
            return;
        }
        let limit = if i == 0 { 0 } else { max + 1 };
        for b in 0..=limit {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    rec(0, 0, &mut rgs, &mut out);
    out
}

/// Set partitions of an arbitrary list of elements, in the order of
/// [`set_partitions`] applied to positions.
pub fn partitions_of(elements: &[usize]) -> Vec<Vec<Vec<usize>>> {
    set_partitions(elements.len())
        .into_iter()
        .map(|p| p.into_iter().map(|b| b.into_iter().map(|i| elements[i]).collect()).collect())
        .collect()
}

/// Bell numbers via the triangle recurrence, independent of the enumeration.
pub fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}
