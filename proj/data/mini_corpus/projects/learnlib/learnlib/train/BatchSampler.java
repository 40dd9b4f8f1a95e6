package learnlib.train;

import java.util.ArrayList;
import java.util.List;

public class BatchSampler {
    private final int batchSize;

    public BatchSampler(int batchSize) {
        this.batchSize = batchSize;
    }

    public List<double[]> sample(List<double[]> dataset, int offset) {
        List<double[]> batch = new ArrayList<>();
        for (int i = offset; i < dataset.size() && batch.size() < batchSize; i++) {
            batch.add(dataset.get(i));
        }
        return batch;
    }
}
