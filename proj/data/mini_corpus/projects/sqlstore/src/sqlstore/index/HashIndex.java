package sqlstore.index;

import java.util.HashMap;
import java.util.Map;

public class HashIndex {
    private final Map<String, Long> buckets = new HashMap<>();

    public void insert(String key, long rowId) {
        buckets.put(key, rowId);
    }

    public Long lookup(String key) {
        return buckets.get(key);
    }
}
