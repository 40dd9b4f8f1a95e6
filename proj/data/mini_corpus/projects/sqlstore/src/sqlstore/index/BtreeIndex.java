package sqlstore.index;

import java.util.TreeMap;

public class BtreeIndex {
    private final TreeMap<String, Long> entries = new TreeMap<>();

    public void insert(String key, long rowId) {
        entries.put(key, rowId);
    }

    public Long lookup(String key) {
        return entries.get(key);
    }
}
