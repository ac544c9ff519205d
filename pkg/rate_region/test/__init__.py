# Test package for rate_region
