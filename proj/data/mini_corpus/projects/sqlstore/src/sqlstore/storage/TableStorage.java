package sqlstore.storage;

import java.util.ArrayList;
import java.util.List;

public class TableStorage {
    private final List<byte[]> rows = new ArrayList<>();

    public long append(byte[] row) {
        rows.add(row);
        return rows.size() - 1;
    }

    public byte[] read(long rowId) {
        return rows.get((int) rowId);
    }

    public int rowCount() {
        return rows.size();
    }
}
