//! Fixtures shared by the criterion benches.

use conradlab::conradian::enumerate_c_orderings;
use conradlab::{Family, OrderingDescriptor};

/// The four C-orderings of `B(1,2)` followed by a few Smirnov orderings.
pub fn bs2_descriptors() -> Vec<OrderingDescriptor> {
    let family = Family::bs(2);
    let mut out = enumerate_c_orderings(family).expect("flip catalogue");
    for s in ["smirnov:sqrt2", "smirnov:1+sqrt2", "smirnov:-3/7:+"] {
        out.push(OrderingDescriptor::parse(s, family).expect("descriptor"));
    }
    out
}

pub fn smirnov_sqrt2() -> OrderingDescriptor {
    OrderingDescriptor::parse("smirnov:sqrt2", Family::bs(2)).expect("descriptor")
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixtures_parse() {
        assert_eq!(super::bs2_descriptors().len(), 7);
    }
}
