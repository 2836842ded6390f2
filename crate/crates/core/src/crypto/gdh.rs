//! Group Diffie-Hellman key agreement, GDH.2 variant: a linear upflow pass
//! followed by a single broadcast downflow, n messages for n members.
//!
//! Member i (0-based) contributes a secret exponent x_i. The agreed key is
//! K = g^(x_0 * x_1 * ... * x_{n-1}) mod p.

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupParams {
    pub p: BigUint,
    pub g: BigUint,
    pub q: BigUint,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GdhError {
    #[error("group key exchange needs at least two members, got {0}")]
    TooFewMembers(usize),
    #[error("member {index} exponent outside [1, q-1]")]
    InvalidExponent { index: usize },
    #[error("invalid group parameters: {0}")]
    BadParams(&'static str),
}

impl GroupParams {
    /// `p` must be prime (caller's contract; the named constructors use
    /// standard primes). The generator/order relation is checked here.
    pub fn new(p: BigUint, g: BigUint, q: BigUint) -> Result<Self, GdhError> {
        if g <= BigUint::one() || g >= p {
            return Err(GdhError::BadParams("generator must satisfy 1 < g < p"));
        }
        if q <= BigUint::one() {
            return Err(GdhError::BadParams("subgroup order must exceed 1"));
        }
        if !g.modpow(&q, &p).is_one() {
            return Err(GdhError::BadParams("g^q mod p != 1"));
        }
        Ok(Self { p, g, q })
    }

    /// Tiny test group: p=23, g=5 (order 22).
    pub fn tiny_test_group() -> Self {
        Self::new(BigUint::from(23u8), BigUint::from(5u8), BigUint::from(22u8))
            .expect("constants are valid")
    }

    /// 64-bit safe prime p = 2q + 1; g = 4 generates the order-q subgroup.
    pub fn safe64() -> Self {
        let p = BigUint::from(0xffff_ffff_ffff_fa43u64);
        let q = BigUint::from(0x7fff_ffff_ffff_fd21u64);
        Self::new(p, BigUint::from(4u8), q).expect("constants are valid")
    }

    /// 2048-bit MODP-style safe prime group with generator 2; the realistic
    /// default for real-crypto runs.
    pub fn modp_2048() -> Self {
        const P_HEX: &str = concat!(
            "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74",
            "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437",
            "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED",
            "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05",
            "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB",
            "9ED529077096966D670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B",
            "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9DE2BCBF695581718",
            "3995497CEA956AE515D2261898FA051015728E5A8AACAA68FFFFFFFFFFFFFFFF",
        );
        let p = BigUint::parse_bytes(P_HEX.as_bytes(), 16).expect("valid hex");
        let q = (&p - BigUint::one()) >> 1;
        Self::new(p, BigUint::from(2u8), q).expect("constants are valid")
    }

    /// Width in octets of the canonical fixed-width element encoding.
    pub fn element_width(&self) -> usize {
        ((self.p.bits() as usize) + 7) / 8
    }

    pub fn encode_element(&self, value: &BigUint) -> Vec<u8> {
        let mut out = vec![0u8; self.element_width()];
        let raw = value.to_bytes_be();
        let start = out.len() - raw.len();
        out[start..].copy_from_slice(&raw);
        out
    }
}

/// Canonically encoded group key: fixed-width big-endian residue for keys
/// produced by the exchange, or raw octets for modeled (non-algebraic) keys.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupKey(Vec<u8>);

impl GroupKey {
    pub fn from_residue(params: &GroupParams, value: &BigUint) -> Self {
        GroupKey(params.encode_element(value))
    }

    pub fn from_raw(bytes: Vec<u8>) -> Self {
        GroupKey(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl std::fmt::Debug for GroupKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupKey({} octets)", self.0.len())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GdhStage {
    Upflow,
    Downflow,
}

/// One protocol message as recorded in the exchange transcript.
#[derive(Clone, Debug)]
pub struct GdhMessage {
    pub sender: usize,
    pub stage: GdhStage,
    /// Upflow from member i: the i+1 partial values each missing one of
    /// x_0..x_i, followed by the cardinal value g^(x_0..x_i).
    /// Downflow: values[j] = g^(product of all exponents except x_j), one
    /// per member 0..n-2.
    pub values: Vec<BigUint>,
}

/// Runs the full GDH.2 schedule for the given member secrets and returns the
/// agreed key together with the n-message transcript.
pub fn gdh_exchange(
    params: &GroupParams,
    secrets: &[BigUint],
) -> Result<(GroupKey, Vec<GdhMessage>), GdhError> {
    let n = secrets.len();
    if n < 2 {
        return Err(GdhError::TooFewMembers(n));
    }
    for (index, x) in secrets.iter().enumerate() {
        if x < &BigUint::one() || x >= &params.q {
            return Err(GdhError::InvalidExponent { index });
        }
    }

    let mut transcript = Vec::with_capacity(n);

    // Upflow. Member 0 starts with cardinal g^x_0 and the single partial
    // value g (missing x_0); each member raises everything it received by
    // its own exponent and appends the previous cardinal as the partial
    // value missing its own exponent.
    let mut partials = vec![params.g.clone()];
    let mut cardinal = params.g.modpow(&secrets[0], &params.p);
    for i in 0..n - 1 {
        let mut values = partials.clone();
        values.push(cardinal.clone());
        transcript.push(GdhMessage {
            sender: i,
            stage: GdhStage::Upflow,
            values,
        });

        let x = &secrets[i + 1];
        let mut next_partials: Vec<BigUint> =
            partials.iter().map(|v| v.modpow(x, &params.p)).collect();
        next_partials.push(cardinal.clone());
        cardinal = cardinal.modpow(x, &params.p);
        partials = next_partials;
    }

    // The last member now holds K = cardinal and broadcasts the partial
    // values, each raised by its exponent, so member j can finish with x_j.
    let key_residue = cardinal;
    let broadcast: Vec<BigUint> = partials[..n - 1].to_vec();
    transcript.push(GdhMessage {
        sender: n - 1,
        stage: GdhStage::Downflow,
        values: broadcast.clone(),
    });

    // Agreement check across all members (the last member already holds K).
    for (j, x) in secrets.iter().take(n - 1).enumerate() {
        let derived = broadcast[j].modpow(x, &params.p);
        debug_assert_eq!(derived, key_residue, "member {j} derived a different key");
    }

    Ok((GroupKey::from_residue(params, &key_residue), transcript))
}
