//! Token-bucket rate limiting, keyed by user id at the IS and by transport
//! source at the verifier.

use std::collections::HashMap;
use std::hash::Hash;

#[derive(Clone, Copy, Debug)]
pub struct RateLimiterConfig {
    pub capacity: f64,
    pub refill_per_minute: f64,
}

impl Default for RateLimiterConfig {
    fn default() -> Self {
        RateLimiterConfig {
            capacity: 10.0,
            refill_per_minute: 10.0,
        }
    }
}

#[derive(Clone, Copy)]
struct Bucket {
    tokens: f64,
    last: f64,
}

/// Per-key token buckets; each bucket starts full.
pub struct RateLimiter<K> {
    cfg: RateLimiterConfig,
    buckets: HashMap<K, Bucket>,
}

impl<K: Eq + Hash> RateLimiter<K> {
    pub fn new(cfg: RateLimiterConfig) -> Self {
        RateLimiter {
            cfg,
            buckets: HashMap::new(),
        }
    }

    /// Consumes one token for `key` if available; `now` is in seconds.
    pub fn allow(&mut self, key: K, now: f64) -> bool {
        let bucket = self.buckets.entry(key).or_insert(Bucket {
            tokens: self.cfg.capacity,
            last: now,
        });
        let elapsed = (now - bucket.last).max(0.0);
        bucket.tokens =
            (bucket.tokens + elapsed * self.cfg.refill_per_minute / 60.0).min(self.cfg.capacity);
        bucket.last = now;
        if bucket.tokens >= 1.0 {
            bucket.tokens -= 1.0;
            true
        } else {
            false
        }
    }
}
